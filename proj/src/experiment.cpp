#include "auxinwave/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "auxinwave/errors.hpp"
#include "auxinwave/profiles.hpp"
#include "auxinwave/svg.hpp"
#include "auxinwave/table_io.hpp"
#include "auxinwave/version.hpp"

namespace auxinwave {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw ValidationError("unknown field '" + it.key() + "' in " + where);
    }
}

double num_field(const json& j, const char* key, double dflt,
                 const std::string& where) {
    if (!j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (!v.is_number())
        throw ValidationError(where + "." + key + " must be a number");
    return v.get<double>();
}

int int_field(const json& j, const char* key, int dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw ValidationError(where + "." + key + " must be an integer");
    return v.get<int>();
}

std::vector<double> list_field(const json& j, const char* key,
                               std::vector<double> dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (!v.is_array())
        throw ValidationError(where + "." + key + " must be an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
        if (!e.is_number())
            throw ValidationError(where + "." + key + " must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

ModelParams params_from_json(const json& j) {
    check_keys(j,
               {"T_act", "T_diff", "k_a", "k_r", "k_m", "k_1", "alpha", "delta",
                "k_2"},
               "params");
    ModelParams p;
    p.T_act = num_field(j, "T_act", p.T_act, "params");
    p.T_diff = num_field(j, "T_diff", p.T_diff, "params");
    p.k_a = num_field(j, "k_a", p.k_a, "params");
    p.k_r = num_field(j, "k_r", p.k_r, "params");
    p.k_m = num_field(j, "k_m", p.k_m, "params");
    p.k_1 = num_field(j, "k_1", p.k_1, "params");
    p.alpha = num_field(j, "alpha", p.alpha, "params");
    p.delta = num_field(j, "delta", p.delta, "params");
    p.k_2 = num_field(j, "k_2", p.k_2, "params");
    return p;
}

SimOptions sim_from_json(const json& j, const std::string& where) {
    SimOptions s;
    s.N = int_field(j, "N", s.N, where);
    s.dt = num_field(j, "dt", s.dt, where);
    s.t_end = num_field(j, "t_end", s.t_end, where);
    s.sample_every = int_field(j, "sample_every", s.sample_every, where);
    s.width_threshold = num_field(j, "width_threshold", s.width_threshold, where);
    if (s.N < 3) throw ValidationError(where + ".N must be >= 3");
    if (s.dt < 0 || s.t_end < 0 || s.sample_every < 0)
        throw ValidationError(where + ": dt, t_end, sample_every must be >= 0");
    if (!(s.width_threshold > 0.0 && s.width_threshold < 1.0))
        throw ValidationError(where + ".width_threshold must lie in (0, 1)");
    return s;
}

json sim_to_json(const SimOptions& s) {
    return {{"N", s.N},
            {"dt", s.dt},
            {"t_end", s.t_end},
            {"sample_every", s.sample_every},
            {"width_threshold", s.width_threshold}};
}

std::string error_name(const std::exception& e) {
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const InstabilityDetected*>(&e)) return "InstabilityDetected";
    if (dynamic_cast<const NoPulse*>(&e)) return "NoPulse";
    if (dynamic_cast<const WidthUndefined*>(&e)) return "WidthUndefined";
    if (dynamic_cast<const NoBracket*>(&e)) return "NoBracket";
    if (dynamic_cast<const TailTooFat*>(&e)) return "TailTooFat";
    if (dynamic_cast<const ImaginaryLeak*>(&e)) return "ImaginaryLeak";
    if (dynamic_cast<const OutOfDomain*>(&e)) return "OutOfDomain";
    if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
    if (dynamic_cast<const IoError*>(&e)) return "IoError";
    return "RuntimeError";
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text,
                                       const std::string& origin) {
    const json j = parse_json(text, origin);
    if (!j.is_object())
        throw ParseError(origin + ": top level must be a JSON object");
    check_keys(j,
               {"experiment", "params", "output_dir", "simulate", "sweep",
                "wavetrain", "profiles", "longwave"},
               "config");
    if (!j.contains("experiment") || !j.at("experiment").is_string())
        throw ValidationError("config needs an \"experiment\" string field");
    const std::string kind = j.at("experiment").get<std::string>();

    ExperimentConfig cfg;
    if (j.contains("params")) {
        if (!j.at("params").is_object())
            throw ValidationError("params must be an object");
        cfg.params = params_from_json(j.at("params"));
    }
    validate(cfg.params);

    for (const char* section : {"simulate", "sweep", "wavetrain", "profiles",
                                "longwave"})
        if (j.contains(section) && kind != section)
            throw ValidationError(std::string("section '") + section +
                                  "' does not match experiment '" + kind + "'");

    const json empty = json::object();
    const json& sec = j.contains(kind) ? j.at(kind) : empty;
    if (!sec.is_object())
        throw ValidationError("section '" + kind + "' must be an object");

    if (kind == "simulate") {
        check_keys(sec,
                   {"A_diamond", "N", "dt", "t_end", "sample_every",
                    "width_threshold"},
                   kind);
        PulseRun e;
        e.A_diamond = num_field(sec, "A_diamond", e.A_diamond, kind);
        if (!(e.A_diamond > 0.0))
            throw ValidationError("simulate.A_diamond must be > 0");
        e.sim = sim_from_json(sec, kind);
        cfg.experiment = e;
    } else if (kind == "sweep") {
        check_keys(sec,
                   {"A_diamond_list", "N", "dt", "t_end", "sample_every",
                    "width_threshold"},
                   kind);
        SweepRun e;
        e.A_diamond_list = list_field(sec, "A_diamond_list", e.A_diamond_list, kind);
        if (e.A_diamond_list.empty())
            throw ValidationError("sweep.A_diamond_list must be non-empty");
        for (double a : e.A_diamond_list)
            if (!(a > 0.0))
                throw ValidationError("sweep amplitudes must be > 0");
        e.sim = sim_from_json(sec, kind);
        cfg.experiment = e;
    } else if (kind == "wavetrain") {
        check_keys(sec,
                   {"influx_rate", "N", "t_end", "dt", "sample_every",
                    "census_min_height"},
                   kind);
        WavetrainRun e;
        e.influx_rate = num_field(sec, "influx_rate", e.influx_rate, kind);
        e.N = int_field(sec, "N", e.N, kind);
        e.t_end = num_field(sec, "t_end", e.t_end, kind);
        e.dt = num_field(sec, "dt", e.dt, kind);
        e.sample_every = int_field(sec, "sample_every", e.sample_every, kind);
        e.census_min_height =
            num_field(sec, "census_min_height", e.census_min_height, kind);
        if (!(e.influx_rate > 0.0))
            throw ValidationError("wavetrain.influx_rate must be > 0");
        if (e.N < 3) throw ValidationError("wavetrain.N must be >= 3");
        if (!(e.t_end > 0.0)) throw ValidationError("wavetrain.t_end must be > 0");
        if (e.dt < 0 || e.sample_every < 0)
            throw ValidationError("wavetrain: dt, sample_every must be >= 0");
        if (!(e.census_min_height > 0.0))
            throw ValidationError("wavetrain.census_min_height must be > 0");
        cfg.experiment = e;
    } else if (kind == "profiles") {
        check_keys(sec, {"c0", "theta", "X_min", "X_max", "n", "width_threshold"},
                   kind);
        ProfilesRun e;
        e.c0 = num_field(sec, "c0", e.c0, kind);
        e.theta = num_field(sec, "theta", e.theta, kind);
        e.X_min = num_field(sec, "X_min", e.X_min, kind);
        e.X_max = num_field(sec, "X_max", e.X_max, kind);
        e.n = int_field(sec, "n", e.n, kind);
        e.width_threshold = num_field(sec, "width_threshold", e.width_threshold, kind);
        if (e.c0 < 0.0) throw ValidationError("profiles.c0 must be >= 0");
        if (!(e.X_max > e.X_min))
            throw ValidationError("profiles needs X_max > X_min");
        if (e.n < 2) throw ValidationError("profiles.n must be >= 2");
        if (!(e.width_threshold > 0.0 && e.width_threshold < 1.0))
            throw ValidationError("profiles.width_threshold must lie in (0, 1)");
        cfg.experiment = e;
    } else if (kind == "longwave") {
        check_keys(sec,
                   {"nu_list", "c0", "theta", "q", "quad_tol", "picard_tol",
                    "max_iter", "damping", "L", "n", "tail_tol"},
                   kind);
        LongWaveRun e;
        e.nu_list = list_field(sec, "nu_list", e.nu_list, kind);
        if (e.nu_list.empty())
            throw ValidationError("longwave.nu_list must be non-empty");
        for (double nu : e.nu_list)
            if (nu < 0.0) throw ValidationError("longwave nu values must be >= 0");
        SolverConfig& s = e.solver;
        s.c0 = num_field(sec, "c0", s.c0, kind);
        s.theta = num_field(sec, "theta", s.theta, kind);
        s.q = num_field(sec, "q", s.q, kind);
        s.quad_tol = num_field(sec, "quad_tol", s.quad_tol, kind);
        s.picard_tol = num_field(sec, "picard_tol", s.picard_tol, kind);
        s.max_iter = int_field(sec, "max_iter", s.max_iter, kind);
        s.damping = num_field(sec, "damping", s.damping, kind);
        s.L = num_field(sec, "L", s.L, kind);
        s.n = int_field(sec, "n", s.n, kind);
        s.tail_tol = num_field(sec, "tail_tol", s.tail_tol, kind);
        if (s.c0 < 0.0) throw ValidationError("longwave.c0 must be >= 0");
        cfg.experiment = e;
    } else {
        throw ValidationError("unknown experiment '" + kind +
                              "' (expected simulate, sweep, wavetrain, profiles "
                              "or longwave)");
    }

    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string())
            throw ValidationError("output_dir must be a string");
        cfg.output_dir = j.at("output_dir").get<std::string>();
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    return config_from_json_text(read_text_file(path), path.string());
}

std::string experiment_name(const ExperimentConfig& cfg) {
    return std::visit(
        [](const auto& e) -> std::string {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, PulseRun>) return "simulate";
            if constexpr (std::is_same_v<T, SweepRun>) return "sweep";
            if constexpr (std::is_same_v<T, WavetrainRun>) return "wavetrain";
            if constexpr (std::is_same_v<T, ProfilesRun>) return "profiles";
            if constexpr (std::is_same_v<T, LongWaveRun>) return "longwave";
        },
        cfg.experiment);
}

namespace {

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = experiment_name(cfg);
    const ModelParams& p = cfg.params;
    j["params"] = {{"T_act", p.T_act}, {"T_diff", p.T_diff}, {"k_a", p.k_a},
                   {"k_r", p.k_r},     {"k_m", p.k_m},       {"k_1", p.k_1},
                   {"alpha", p.alpha}, {"delta", p.delta},   {"k_2", p.k_2}};
    std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, PulseRun>) {
                json s = sim_to_json(e.sim);
                s["A_diamond"] = e.A_diamond;
                j["simulate"] = s;
            } else if constexpr (std::is_same_v<T, SweepRun>) {
                json s = sim_to_json(e.sim);
                s["A_diamond_list"] = e.A_diamond_list;
                j["sweep"] = s;
            } else if constexpr (std::is_same_v<T, WavetrainRun>) {
                j["wavetrain"] = {{"influx_rate", e.influx_rate},
                                  {"N", e.N},
                                  {"t_end", e.t_end},
                                  {"dt", e.dt},
                                  {"sample_every", e.sample_every},
                                  {"census_min_height", e.census_min_height}};
            } else if constexpr (std::is_same_v<T, ProfilesRun>) {
                j["profiles"] = {{"c0", e.c0},
                                 {"theta", e.theta},
                                 {"X_min", e.X_min},
                                 {"X_max", e.X_max},
                                 {"n", e.n},
                                 {"width_threshold", e.width_threshold}};
            } else if constexpr (std::is_same_v<T, LongWaveRun>) {
                const SolverConfig& s = e.solver;
                j["longwave"] = {{"nu_list", e.nu_list},
                                 {"c0", s.c0},
                                 {"theta", s.theta},
                                 {"q", s.q},
                                 {"quad_tol", s.quad_tol},
                                 {"picard_tol", s.picard_tol},
                                 {"max_iter", s.max_iter},
                                 {"damping", s.damping},
                                 {"L", s.L},
                                 {"n", s.n},
                                 {"tail_tol", s.tail_tol}};
            }
        },
        cfg.experiment);
    if (!cfg.output_dir.empty())
        j["output_dir"] = cfg.output_dir.generic_string();
    return j;
}

}  // namespace

std::string config_to_json_text(const ExperimentConfig& cfg) {
    return config_to_json(cfg).dump(2) + "\n";
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg) {
    std::filesystem::path dir = cfg.output_dir;
    if (dir.empty()) dir = std::filesystem::path("out") / experiment_name(cfg);
    if (dir.is_relative())
        if (const char* root = std::getenv("AUXINWAVE_OUTPUT_ROOT"))
            dir = std::filesystem::path(root) / dir;
    return dir;
}

namespace {

// ---------------------------------------------------------------------------
// artifact emission per experiment kind
// ---------------------------------------------------------------------------

using Emit = std::vector<std::string>;  // relative file names, in emission order

void add_csv(const std::filesystem::path& dir, Emit& files, const std::string& name,
             const Table& t) {
    write_csv(dir / name, t);
    files.push_back(name);
}

void add_svg(const std::filesystem::path& dir, Emit& files, const std::string& name,
             const PlotSpec& spec) {
    write_svg_plot(dir / name, spec);
    files.push_back(name);
}

std::vector<int> snapshot_picks(int count, int want) {
    std::vector<int> picks;
    if (count <= 0) return picks;
    const int m = std::min(want, count);
    for (int i = 0; i < m; ++i) {
        const int idx = static_cast<int>(
            std::lround(static_cast<double>(i) * (count - 1) / std::max(m - 1, 1)));
        if (picks.empty() || picks.back() != idx) picks.push_back(idx);
    }
    return picks;
}

PlotSpec snapshot_plot(const Trajectory& tr, char component, const std::string& title) {
    PlotSpec spec;
    spec.title = title;
    spec.xlabel = "cell j";
    spec.ylabel = std::string(1, component);
    for (int idx : snapshot_picks(static_cast<int>(tr.snapshots.size()), 6)) {
        const LatticeState& s = tr.snapshots[static_cast<std::size_t>(idx)];
        Series ser;
        char lab[32];
        std::snprintf(lab, sizeof lab, "t=%.6g", s.t);
        ser.label = lab;
        const std::vector<double>& arr =
            component == 'A' ? s.A : component == 'P' ? s.P : s.R;
        for (int j = 0; j < s.size(); ++j) {
            ser.x.push_back(j + 1);
            ser.y.push_back(arr[static_cast<std::size_t>(j)]);
        }
        spec.series.push_back(std::move(ser));
    }
    return spec;
}

void run_one(const ExperimentConfig& cfg, const PulseRun& e,
             const std::filesystem::path& dir, Emit& files) {
    const Trajectory tr = run_pulse(cfg.params, e.A_diamond, e.sim);
    const WaveMeasurement m = measure(tr, e.sim.width_threshold);

    write_trajectory_csv(dir / "trajectory.csv", tr);
    files.push_back("trajectory.csv");
    write_trajectory_bin(dir / "trajectory.bin", tr);
    files.push_back("trajectory.bin");

    add_csv(dir, files, "measurement.csv",
            Table{{"A_diamond", "speed", "width", "hA", "hP", "hR", "t_begin",
                   "t_end", "peak_x"},
                  {{e.A_diamond, m.speed, m.width, m.hA, m.hP, m.hR, m.t_begin,
                    m.t_end, m.peak_x}}});

    add_svg(dir, files, "snapshots_A.svg",
            snapshot_plot(tr, 'A', "auxin pulse snapshots"));
    add_svg(dir, files, "snapshots_R.svg",
            snapshot_plot(tr, 'R', "polarized carriers (residual trail)"));
}

void run_one(const ExperimentConfig& cfg, const SweepRun& e,
             const std::filesystem::path& dir, Emit& files) {
    const SweepResult sr = sweep_and_fit(cfg.params, e.A_diamond_list, e.sim);
    const DerivedConstants dc = derived_constants(cfg.params);
    const ProfileContext ctx = make_profile_context(cfg.params, dc.c_star, 0.0);
    const double wstar = w_star(ctx, e.sim.width_threshold);

    Table sweep{{"A_diamond", "hA", "c", "w", "hP", "hR"}, {}};
    for (const SweepPoint& pt : sr.points)
        sweep.rows.push_back(
            {pt.a_init, pt.m.hA, pt.m.speed, pt.m.width, pt.m.hP, pt.m.hR});
    add_csv(dir, files, "sweep.csv", sweep);

    {
        std::ostringstream os;
        os << "quantity,exponent,log_prefactor,rms_residual,n_points\n";
        const std::pair<const char*, const ScalingFit*> rows[] = {
            {"speed", &sr.speed_fit},
            {"width", &sr.width_fit},
            {"hP", &sr.hP_fit},
            {"hR", &sr.hR_fit}};
        for (auto [name, fit] : rows)
            os << name << ',' << format_g17(fit->exponent) << ','
               << format_g17(fit->log_prefactor) << ','
               << format_g17(fit->rms_residual) << ',' << fit->n_points << '\n';
        write_text_file(dir / "fits.csv", os.str());
        files.push_back("fits.csv");
    }

    // log-log scatter per quantity with the predicted power law dashed
    struct Panel {
        const char* file;
        const char* ylabel;
        double exponent;
        double prefactor;
        std::vector<double> y;
    };
    std::vector<Panel> panels = {
        {"scaling_speed.svg", "speed c", 0.4, dc.c_star, {}},
        {"scaling_width.svg", "width w", -0.4, wstar, {}},
        {"scaling_hP.svg", "height hP", 0.2, dc.hP_star, {}},
        {"scaling_hR.svg", "height hR", 0.4, dc.hR_star, {}},
    };
    std::vector<double> hA;
    for (const SweepPoint& pt : sr.points) {
        hA.push_back(pt.m.hA);
        panels[0].y.push_back(pt.m.speed);
        panels[1].y.push_back(pt.m.width);
        panels[2].y.push_back(pt.m.hP);
        panels[3].y.push_back(pt.m.hR);
    }
    const double hmin = *std::min_element(hA.begin(), hA.end());
    const double hmax = *std::max_element(hA.begin(), hA.end());
    for (const Panel& p : panels) {
        PlotSpec spec;
        spec.title = std::string(p.ylabel) + " vs pulse height";
        spec.xlabel = "hA";
        spec.ylabel = p.ylabel;
        spec.logx = spec.logy = true;
        Series ref;
        ref.label = "predicted slope " + format_g17(p.exponent);
        ref.dashed = true;
        ref.color = "#555555";
        for (int i = 0; i <= 64; ++i) {
            const double x =
                hmin / 1.25 * std::pow(hmax * 1.25 / (hmin / 1.25), i / 64.0);
            ref.x.push_back(x);
            ref.y.push_back(p.prefactor * std::pow(x, p.exponent));
        }
        Series data;
        data.label = "measured";
        data.points = true;
        data.line = false;
        data.x = hA;
        data.y = p.y;
        spec.series = {ref, data};
        add_svg(dir, files, p.file, spec);
    }

    // rescaled-profile overlays against the closed forms (aligned on A)
    struct Overlay {
        const char* file;
        const char* title;
        char comp;
    };
    const Overlay overlays[] = {{"profiles_A.svg", "rescaled auxin profiles", 'A'},
                                {"profiles_P.svg", "rescaled P profiles", 'P'},
                                {"profiles_R.svg", "rescaled R profiles", 'R'}};
    std::vector<RescaledProfile> rescaled;
    std::vector<double> shifts;
    for (const SweepPoint& pt : sr.points) {
        RescaledProfile rp = rescale_profile(pt.m);
        const AlignResult al = align_to_reference(
            rp.A, [&](double X) { return phi_A(ctx, X); }, -4.0, 4.0);
        shifts.push_back(al.shift);
        rescaled.push_back(std::move(rp));
    }
    for (const Overlay& ov : overlays) {
        PlotSpec spec;
        spec.title = ov.title;
        spec.xlabel = "X";
        spec.ylabel = "scaled value";
        Series ref;
        ref.label = "closed form";
        ref.color = "#111111";
        ref.stroke_width = 2.0;
        for (int i = 0; i <= 400; ++i) {
            const double X = -8.0 + 16.0 * i / 400.0;
            ref.x.push_back(X);
            ref.y.push_back(ov.comp == 'A'   ? phi_A(ctx, X)
                            : ov.comp == 'P' ? phi_P(ctx, X)
                                             : phi_R(ctx, X));
        }
        spec.series.push_back(std::move(ref));
        for (std::size_t i = 0; i < rescaled.size(); ++i) {
            const GridFunction& f = ov.comp == 'A'   ? rescaled[i].A
                                    : ov.comp == 'P' ? rescaled[i].P
                                                     : rescaled[i].R;
            Series s;
            s.label = "A_init " + format_g17(sr.points[i].a_init);
            for (int k = 0; k < f.n; ++k) {
                s.x.push_back(f.x(k) - shifts[i]);
                s.y.push_back(f.v[k]);
            }
            spec.series.push_back(std::move(s));
        }
        add_svg(dir, files, ov.file, spec);
    }
}

void run_one(const ExperimentConfig& cfg, const WavetrainRun& e,
             const std::filesystem::path& dir, Emit& files) {
    LatticeState zero;
    zero.A.assign(static_cast<std::size_t>(e.N), 0.0);
    zero.P.assign(static_cast<std::size_t>(e.N), 0.0);
    zero.R.assign(static_cast<std::size_t>(e.N), 0.0);
    const double dt = e.dt > 0.0 ? e.dt : std::min(0.02, default_dt(cfg.params, zero));
    const int steps = static_cast<int>(std::ceil(e.t_end / dt));
    const int sample_every =
        e.sample_every > 0 ? e.sample_every : std::max(1, steps / 600);

    const Trajectory tr =
        run_wavetrain(cfg.params, e.influx_rate, e.N, e.t_end, dt, sample_every);
    write_trajectory_bin(dir / "trajectory.bin", tr);
    files.push_back("trajectory.bin");

    const std::vector<PulseCensus> cen = census(tr, e.census_min_height);
    Table census_t{{"t", "count"}, {}};
    Table pulses_t{{"t", "x", "height"}, {}};
    for (const PulseCensus& c : cen) {
        census_t.rows.push_back({c.t, static_cast<double>(c.x.size())});
        for (std::size_t i = 0; i < c.x.size(); ++i)
            pulses_t.rows.push_back({c.t, c.x[i], c.height[i]});
    }
    add_csv(dir, files, "census.csv", census_t);
    add_csv(dir, files, "pulses.csv", pulses_t);

    const int coexist = max_coexisting(cen);
    const int merges = count_merges(cen, e.N);
    const TallerFasterStats tf = taller_faster(cen, e.N);
    add_csv(dir, files, "summary.csv",
            Table{{"max_coexisting", "merge_events", "taller_faster_consistent",
                   "taller_faster_total"},
                  {{static_cast<double>(coexist), static_cast<double>(merges),
                    static_cast<double>(tf.consistent),
                    static_cast<double>(tf.total)}}});

    add_svg(dir, files, "wavetrain_A.svg",
            snapshot_plot(tr, 'A', "wavetrain snapshots"));
}

void run_one(const ExperimentConfig& cfg, const ProfilesRun& e,
             const std::filesystem::path& dir, Emit& files) {
    const DerivedConstants dc = derived_constants(cfg.params);
    const double c0 = e.c0 > 0.0 ? e.c0 : dc.c_star;
    const ProfileContext ctx = make_profile_context(cfg.params, c0, e.theta);

    Table prof{{"X", "phiA", "phiP", "phiR", "sigma", "Sigma", "zeta"}, {}};
    for (int i = 0; i < e.n; ++i) {
        const double X = e.X_min + (e.X_max - e.X_min) * i / (e.n - 1);
        prof.rows.push_back({X, phi_A(ctx, X), phi_P(ctx, X), phi_R(ctx, X),
                             sigma(ctx, X), big_sigma(ctx, X), zeta(ctx, X)});
    }
    add_csv(dir, files, "profiles.csv", prof);

    add_csv(dir, files, "constants.csv",
            Table{{"kappa", "tau1", "tau2", "c_star", "hP_star", "hR_star", "c0",
                   "theta", "peak_X", "sup_sigma", "w_star"},
                  {{dc.kappa, dc.tau1, dc.tau2, dc.c_star, dc.hP_star, dc.hR_star,
                    c0, e.theta, peak_location(ctx), sup_sigma(ctx),
                    w_star(ctx, e.width_threshold)}}});

    PlotSpec spec;
    spec.title = "leading-order wave-frame profiles";
    spec.xlabel = "X";
    spec.ylabel = "value / sup";
    const double supP = phi_P(ctx, e.X_min), supR = phi_R(ctx, e.X_min);
    Series a, p, r;
    a.label = "phiA";
    p.label = "phiP / " + format_g17(supP);
    r.label = "phiR / " + format_g17(supR);
    for (int i = 0; i < e.n; ++i) {
        const double X = e.X_min + (e.X_max - e.X_min) * i / (e.n - 1);
        a.x.push_back(X);
        a.y.push_back(phi_A(ctx, X));
        p.x.push_back(X);
        p.y.push_back(phi_P(ctx, X) / supP);
        r.x.push_back(X);
        r.y.push_back(phi_R(ctx, X) / supR);
    }
    spec.series = {a, p, r};
    add_svg(dir, files, "profiles.svg", spec);
}

void run_one(const ExperimentConfig& cfg, const LongWaveRun& e,
             const std::filesystem::path& dir, Emit& files) {
    SolverConfig base = e.solver;
    base.params = cfg.params;
    if (base.c0 == 0.0) base.c0 = derived_constants(cfg.params).c_star;

    std::vector<double> positive;
    for (double nu : e.nu_list)
        if (nu > 0.0) positive.push_back(nu);
    if (!positive.empty()) {
        Table gaps{{"nu", "sup_diff", "sup_diff_over_cbrt_nu"}, {}};
        for (const SymbolGap& g : symbol_convergence_table(positive, base))
            gaps.rows.push_back({g.nu, g.sup_diff, g.ratio});
        add_csv(dir, files, "symbol_gaps.csv", gaps);
    }

    Table summary{{"nu", "iterations", "residual1", "residual2", "eta_norm",
                   "eta_norm_over_cbrt_nu"},
                  {}};
    Table deltas{{"nu", "iteration", "delta"}, {}};
    Table corrections{{"nu", "X", "eta1", "eta2", "psi1", "psi2"}, {}};
    std::vector<double> nz_nu, nz_eta;
    for (double nu : e.nu_list) {
        SolverConfig c = base;
        c.nu = nu;
        const FixedPointResult r = picard_solve(c);
        summary.rows.push_back(
            {nu, static_cast<double>(r.iterations), r.residual1, r.residual2,
             r.eta_norm, nu > 0.0 ? r.eta_norm / std::cbrt(nu) : 0.0});
        for (std::size_t i = 0; i < r.deltas.size(); ++i)
            deltas.rows.push_back({nu, static_cast<double>(i + 1), r.deltas[i]});
        const int stride = std::max(1, r.eta1.n / 2048);
        for (int i = 0; i < r.eta1.n; i += stride)
            corrections.rows.push_back({nu, r.eta1.x(i), r.eta1.v[i], r.eta2.v[i],
                                        r.psi1.v[i], r.psi2.v[i]});
        if (nu > 0.0) {
            nz_nu.push_back(nu);
            nz_eta.push_back(r.eta_norm);
        }
    }
    add_csv(dir, files, "summary.csv", summary);
    add_csv(dir, files, "deltas.csv", deltas);
    add_csv(dir, files, "corrections.csv", corrections);

    if (nz_nu.size() >= 2) {
        PlotSpec spec;
        spec.title = "correction size vs nu";
        spec.xlabel = "nu";
        spec.ylabel = "eta norm";
        spec.logx = spec.logy = true;
        const double numax = *std::max_element(nz_nu.begin(), nz_nu.end());
        double cref = 0.0;
        for (std::size_t i = 0; i < nz_nu.size(); ++i)
            if (nz_nu[i] == numax) cref = nz_eta[i] / std::cbrt(numax);
        Series ref;
        ref.label = "slope 1/3";
        ref.dashed = true;
        ref.color = "#555555";
        const double numin = *std::min_element(nz_nu.begin(), nz_nu.end());
        for (int i = 0; i <= 32; ++i) {
            const double x = numin / 1.2 * std::pow(numax * 1.2 / (numin / 1.2),
                                                    i / 32.0);
            ref.x.push_back(x);
            ref.y.push_back(cref * std::cbrt(x));
        }
        Series data;
        data.label = "measured";
        data.points = true;
        data.line = false;
        data.x = nz_nu;
        data.y = nz_eta;
        spec.series = {ref, data};
        add_svg(dir, files, "eta_norm.svg", spec);
    }
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& man) {
    json j;
    j["tool"] = "auxinwave";
    j["version"] = man.version;
    j["experiment"] = man.experiment;
    j["status"] = man.status;
    j["wall_time_seconds"] = man.wall_time_seconds;
    j["config"] = json::parse(man.config_echo);
    json outs = json::array();
    for (const ManifestEntry& e : man.outputs)
        outs.push_back({{"file", e.file}, {"fnv1a64", e.fnv1a64}});
    j["outputs"] = outs;
    if (man.status != "ok")
        j["error"] = {{"type", man.error_type}, {"message", man.error_message}};
    write_text_file(dir / "manifest.json", j.dump(2) + "\n");
}

}  // namespace

RunManifest run(const ExperimentConfig& cfg) {
    validate(cfg.params);
    const std::filesystem::path dir = resolve_output_dir(cfg);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory: " + dir.string());

    RunManifest man;
    man.version = kVersion;
    man.experiment = experiment_name(cfg);
    man.config_echo = config_to_json_text(cfg);

    const auto t0 = std::chrono::steady_clock::now();
    Emit files;
    auto finalize = [&] {
        man.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        man.outputs.clear();
        for (const std::string& f : files)
            man.outputs.push_back({f, hex64(hash_file(dir / f))});
        write_manifest(dir, man);
    };
    try {
        std::visit([&](const auto& e) { run_one(cfg, e, dir, files); },
                   cfg.experiment);
    } catch (const std::exception& e) {
        man.status = "error";
        man.error_type = error_name(e);
        man.error_message = e.what();
        finalize();
        throw;
    }
    finalize();
    return man;
}

bool verify_run(const std::filesystem::path& run_dir, std::string* report) {
    const json man =
        parse_json(read_text_file(run_dir / "manifest.json"),
                   (run_dir / "manifest.json").string());
    if (!man.contains("config") || !man.contains("outputs"))
        throw ParseError("manifest lacks config/outputs: " + run_dir.string());

    ExperimentConfig cfg = config_from_json_text(man.at("config").dump(),
                                                 "manifest config echo");
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    const std::filesystem::path tmp =
        std::filesystem::temp_directory_path() /
        ("auxinwave-verify-" + std::to_string(static_cast<long long>(stamp)));
    cfg.output_dir = tmp;

    std::ostringstream os;
    bool ok = true;
    try {
        run(cfg);
        const auto hash_or_missing = [](const std::filesystem::path& f) {
            try {
                return hex64(hash_file(f));
            } catch (const IoError&) {
                return std::string("<missing>");
            }
        };
        for (const json& entry : man.at("outputs")) {
            const std::string file = entry.at("file").get<std::string>();
            const std::string want = entry.at("fnv1a64").get<std::string>();
            // the artifact on disk and a fresh re-run must both reproduce the
            // recorded hash; comparing only the re-run would miss files
            // altered after the manifest was written
            const std::string disk = hash_or_missing(run_dir / file);
            const std::string rerun = hash_or_missing(tmp / file);
            const bool match = disk == want && rerun == want;
            ok = ok && match;
            os << (match ? "  ok      " : "  MISMATCH") << "  " << file
               << "  recorded " << want << "  on disk " << disk << "  re-run "
               << rerun << '\n';
        }
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove_all(tmp, ec);
        throw;
    }
    std::error_code ec;
    std::filesystem::remove_all(tmp, ec);
    os << (ok ? "verified: all artifacts reproduce byte-identically\n"
              : "verification FAILED: at least one artifact differs\n");
    if (report) *report += os.str();
    return ok;
}

}  // namespace auxinwave
