#include "auxinwave/table_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "auxinwave/errors.hpp"

namespace auxinwave {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path, bool binary) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

void put_u64(std::string& buf, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

void put_u32(std::string& buf, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

void put_f64(std::string& buf, double x) { put_u64(buf, std::bit_cast<std::uint64_t>(x)); }

struct ByteReader {
    const std::string& data;
    std::size_t pos = 0;
    const std::filesystem::path& path;

    void need(std::size_t n) const {
        if (pos + n > data.size())
            throw ParseError("truncated trajectory file: " + path.string());
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t x = 0;
        for (int i = 0; i < 8; ++i)
            x |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos + i]))
                 << (8 * i);
        pos += 8;
        return x;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t x = 0;
        for (int i = 0; i < 4; ++i)
            x |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + i]))
                 << (8 * i);
        pos += 4;
        return x;
    }
    double f64() { return std::bit_cast<double>(u64()); }
};

constexpr char kMagic[9] = "AUXWTRJ1";

}  // namespace

void write_csv(const std::filesystem::path& path, const Table& table) {
    std::ostringstream os;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << table.columns[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw ValidationError("CSV row width does not match the header");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << format_g17(row[c]);
        }
        os << '\n';
    }
    write_text_file(path, os.str());
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& tr) {
    std::ofstream out = open_out(path, false);
    out << "t,j,A,P,R\n";
    for (const LatticeState& s : tr.snapshots) {
        const std::string ts = format_g17(s.t);
        for (int j = 0; j < s.size(); ++j) {
            out << ts << ',' << (j + 1) << ',' << format_g17(s.A[j]) << ','
                << format_g17(s.P[j]) << ',' << format_g17(s.R[j]) << '\n';
        }
    }
    finish(out, path);
}

void write_trajectory_bin(const std::filesystem::path& path, const Trajectory& tr) {
    const std::uint64_t N = tr.snapshots.empty() ? 0 : tr.snapshots.front().size();
    std::string buf;
    buf.reserve(64 + tr.snapshots.size() * (8 + 24 * N));
    buf.append(kMagic, 8);
    put_u64(buf, N);
    put_u64(buf, tr.snapshots.size());
    put_f64(buf, tr.dt);
    put_u64(buf, static_cast<std::uint64_t>(tr.sample_every));

    std::uint32_t tag = 0;
    double rate = 0.0;
    if (const auto* in = std::get_if<InfluxLeft>(&tr.bc)) {
        tag = 1;
        rate = in->rate;
    } else if (std::holds_alternative<Periodic>(tr.bc)) {
        tag = 2;
    }
    put_u32(buf, tag);
    put_f64(buf, rate);

    const ModelParams& p = tr.params;
    for (double v : {p.T_act, p.T_diff, p.k_a, p.k_r, p.k_m, p.k_1, p.alpha,
                     p.delta, p.k_2})
        put_f64(buf, v);

    for (const LatticeState& s : tr.snapshots) {
        put_f64(buf, s.t);
        for (const auto* arr : {&s.A, &s.P, &s.R})
            for (double v : *arr) put_f64(buf, v);
    }

    std::ofstream out = open_out(path, true);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    finish(out, path);
}

Trajectory read_trajectory_bin(const std::filesystem::path& path) {
    const std::string data = [&] {
        std::ifstream in = open_in(path, true);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }();
    ByteReader r{data, 0, path};
    r.need(8);
    if (std::memcmp(data.data(), kMagic, 8) != 0)
        throw ParseError("not a trajectory file (bad magic): " + path.string());
    r.pos = 8;

    Trajectory tr;
    const std::uint64_t N = r.u64();
    const std::uint64_t n_snap = r.u64();
    tr.dt = r.f64();
    tr.sample_every = static_cast<int>(r.u64());
    const std::uint32_t tag = r.u32();
    const double rate = r.f64();
    switch (tag) {
        case 0: tr.bc = ClosedRow{}; break;
        case 1: tr.bc = InfluxLeft{rate}; break;
        case 2: tr.bc = Periodic{}; break;
        default: throw ParseError("unknown boundary tag in " + path.string());
    }
    double* fields[] = {&tr.params.T_act, &tr.params.T_diff, &tr.params.k_a,
                        &tr.params.k_r,   &tr.params.k_m,    &tr.params.k_1,
                        &tr.params.alpha, &tr.params.delta,  &tr.params.k_2};
    for (double* f : fields) *f = r.f64();

    if (N > (1u << 24) || n_snap > (1u << 24))
        throw ParseError("implausible dimensions in " + path.string());
    tr.snapshots.resize(n_snap);
    for (auto& s : tr.snapshots) {
        s.t = r.f64();
        s.A.resize(N);
        s.P.resize(N);
        s.R.resize(N);
        for (auto* arr : {&s.A, &s.P, &s.R})
            for (double& v : *arr) v = r.f64();
    }
    if (r.pos != data.size())
        throw ParseError("trailing bytes in trajectory file: " + path.string());
    return tr;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in = open_in(path, true);
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path.string());
    return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out = open_out(path, true);  // binary: no newline translation
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    finish(out, path);
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t hash_file(const std::filesystem::path& path) {
    const std::string bytes = read_text_file(path);
    return fnv1a64(bytes.data(), bytes.size());
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace auxinwave
