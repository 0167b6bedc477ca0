#include "auxinwave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "auxinwave/errors.hpp"
#include "auxinwave/table_io.hpp"

namespace auxinwave {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double nice_step(double range, int target) {
    const double raw = range / std::max(target, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    const double nice = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0 : 10.0;
    return nice * mag;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;
    std::vector<double> ticks;  // in transformed coordinates

    double transform(double v) const { return log ? std::log10(v) : v; }
    std::string tick_label(double t) const { return fmt(log ? std::pow(10.0, t) : t); }
};

Axis make_axis(double lo, double hi, bool log) {
    Axis ax;
    ax.log = log;
    if (!(hi > lo)) {
        const double pad = std::max(std::fabs(lo), 1.0) * 0.5;
        lo -= pad;
        hi += pad;
    }
    const double span = hi - lo;
    lo -= 0.05 * span;
    hi += 0.05 * span;
    ax.lo = lo;
    ax.hi = hi;
    if (log && hi - lo >= 1.0) {
        for (double t = std::ceil(lo); t <= hi + 1e-12; t += 1.0) ax.ticks.push_back(t);
    } else {
        const double step = nice_step(hi - lo, 5);
        for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * step; t += step)
            ax.ticks.push_back(std::fabs(t) < 1e-12 * step ? 0.0 : t);
    }
    return ax;
}

}  // namespace

void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec) {
    const int W = spec.width, H = spec.height;
    const int ml = 72, mr = 24, mt = 42, mb = 56;
    const double pw = W - ml - mr, ph = H - mt - mb;

    // data ranges in transformed coordinates
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const Series& s : spec.series) {
        if (s.x.size() != s.y.size())
            throw ValidationError("series x/y length mismatch in plot '" +
                                  spec.title + "'");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double x = s.x[i], y = s.y[i];
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (spec.logx && !(x > 0.0)) continue;
            if (spec.logy && !(y > 0.0)) continue;
            if (spec.logx) x = std::log10(x);
            if (spec.logy) y = std::log10(y);
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    }
    if (!std::isfinite(xlo)) {
        xlo = 0.0;
        xhi = 1.0;
        ylo = 0.0;
        yhi = 1.0;
    }
    const Axis xa = make_axis(xlo, xhi, spec.logx);
    const Axis ya = make_axis(ylo, yhi, spec.logy);

    auto px = [&](double xt) { return ml + (xt - xa.lo) / (xa.hi - xa.lo) * pw; };
    auto py = [&](double yt) { return H - mb - (yt - ya.lo) / (ya.hi - ya.lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
       << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

    // grid + ticks
    os << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#333\">\n";
    for (double t : xa.ticks) {
        const double x = px(t);
        os << "<line x1=\"" << fmt(x) << "\" y1=\"" << mt << "\" x2=\"" << fmt(x)
           << "\" y2=\"" << (H - mb) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(x) << "\" y=\"" << (H - mb + 16)
           << "\" text-anchor=\"middle\">" << esc(xa.tick_label(t)) << "</text>\n";
    }
    for (double t : ya.ticks) {
        const double y = py(t);
        os << "<line x1=\"" << ml << "\" y1=\"" << fmt(y) << "\" x2=\"" << (W - mr)
           << "\" y2=\"" << fmt(y) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << (ml - 6) << "\" y=\"" << fmt(y + 3)
           << "\" text-anchor=\"end\">" << esc(ya.tick_label(t)) << "</text>\n";
    }
    os << "</g>\n";

    // frame
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << fmt(pw)
       << "\" height=\"" << fmt(ph)
       << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    // series
    int color_i = 0;
    for (const Series& s : spec.series) {
        const std::string color =
            s.color.empty() ? kPalette[color_i % 8] : s.color;
        ++color_i;
        auto emit_point = [&](double xv, double yv, std::string& seg,
                              std::ostringstream& pts) {
            if (!std::isfinite(xv) || !std::isfinite(yv) ||
                (spec.logx && !(xv > 0.0)) || (spec.logy && !(yv > 0.0))) {
                if (!seg.empty()) {
                    os << "<polyline points=\"" << seg << "\" fill=\"none\" stroke=\""
                       << color << "\" stroke-width=\"" << fmt(s.stroke_width) << '"'
                       << (s.dashed ? " stroke-dasharray=\"7,4\"" : "") << "/>\n";
                    seg.clear();
                }
                return;
            }
            const double x = px(spec.logx ? std::log10(xv) : xv);
            const double y = py(spec.logy ? std::log10(yv) : yv);
            if (s.line) {
                if (!seg.empty()) seg += ' ';
                seg += fmt(x) + "," + fmt(y);
            }
            if (s.points)
                pts << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        };
        std::string seg;
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i)
            emit_point(s.x[i], s.y[i], seg, pts);
        if (!seg.empty())
            os << "<polyline points=\"" << seg << "\" fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"" << fmt(s.stroke_width) << '"'
               << (s.dashed ? " stroke-dasharray=\"7,4\"" : "") << "/>\n";
        os << pts.str();
    }

    // legend (only labeled series)
    std::vector<std::pair<std::string, int>> entries;
    color_i = 0;
    for (const Series& s : spec.series) {
        if (!s.label.empty()) entries.emplace_back(s.label, color_i);
        ++color_i;
    }
    if (!entries.empty()) {
        std::size_t maxlen = 0;
        for (auto& e : entries) maxlen = std::max(maxlen, e.first.size());
        const double lw = 44 + 6.2 * static_cast<double>(maxlen);
        const double lh = 8 + 16.0 * static_cast<double>(entries.size());
        const double lx = W - mr - lw - 8, ly = mt + 8;
        os << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly) << "\" width=\""
           << fmt(lw) << "\" height=\"" << fmt(lh)
           << "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999\"/>\n";
        os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#111\">\n";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const Series& s = spec.series[static_cast<std::size_t>(entries[i].second)];
            const std::string color =
                s.color.empty() ? kPalette[entries[i].second % 8] : s.color;
            const double yy = ly + 16.0 * static_cast<double>(i) + 14;
            os << "<line x1=\"" << fmt(lx + 6) << "\" y1=\"" << fmt(yy - 4)
               << "\" x2=\"" << fmt(lx + 30) << "\" y2=\"" << fmt(yy - 4)
               << "\" stroke=\"" << color << "\" stroke-width=\"2\""
               << (s.dashed ? " stroke-dasharray=\"7,4\"" : "") << "/>\n";
            os << "<text x=\"" << fmt(lx + 36) << "\" y=\"" << fmt(yy) << "\">"
               << esc(entries[i].first) << "</text>\n";
        }
        os << "</g>\n";
    }

    // labels
    os << "<g font-family=\"sans-serif\" fill=\"#111\">\n";
    if (!spec.title.empty())
        os << "<text x=\"" << (W / 2) << "\" y=\"24\" font-size=\"14\" "
           << "text-anchor=\"middle\">" << esc(spec.title) << "</text>\n";
    if (!spec.xlabel.empty())
        os << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << (H - 12)
           << "\" font-size=\"12\" text-anchor=\"middle\">" << esc(spec.xlabel)
           << "</text>\n";
    if (!spec.ylabel.empty())
        os << "<text x=\"18\" y=\"" << fmt(mt + ph / 2)
           << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
           << fmt(mt + ph / 2) << ")\">" << esc(spec.ylabel) << "</text>\n";
    os << "</g>\n</svg>\n";

    write_text_file(path, os.str());
}

}  // namespace auxinwave
