#include "auxinwave/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "auxinwave/errors.hpp"

namespace auxinwave {

int guard_band(int N) { return std::max(30, N / 10); }

namespace {

// Parabola through (j-1, am), (j, a0), (j+1, ap); returns the vertex offset
// in [-0.5, 0.5] and its height.
void refine_peak(double am, double a0, double ap, double& offset, double& height) {
    const double denom = am - 2.0 * a0 + ap;
    if (denom >= 0.0 || !std::isfinite(denom)) {  // flat or degenerate
        offset = 0.0;
        height = a0;
        return;
    }
    offset = 0.5 * (am - ap) / denom;
    offset = std::clamp(offset, -0.5, 0.5);
    height = a0 - 0.25 * (am - ap) * offset;
}

struct TrackedPeaks {
    std::vector<PeakSample> samples;
    std::vector<int> snapshot_index;
};

// Longest contiguous run of snapshots whose A peak sits inside the guard
// window.
TrackedPeaks track_peak_indexed(const Trajectory& traj, int min_count) {
    if (traj.snapshots.empty()) throw NoPulse("trajectory has no snapshots");
    const int N = traj.snapshots.front().size();
    const int guard = guard_band(N);

    std::vector<PeakSample> all;
    std::vector<int> idx;
    std::vector<char> ok(traj.snapshots.size(), 0);
    std::vector<PeakSample> per(traj.snapshots.size());

    for (size_t k = 0; k < traj.snapshots.size(); ++k) {
        const LatticeState& s = traj.snapshots[k];
        int jmax = 0;
        for (int j = 1; j < N; ++j)
            if (s.A[j] > s.A[jmax]) jmax = j;
        if (jmax == 0 || jmax == N - 1) continue;
        double offset, height;
        refine_peak(s.A[jmax - 1], s.A[jmax], s.A[jmax + 1], offset, height);
        const double x = (jmax + 1) + offset;  // 1-based cell coordinate
        if (!(height > 0.0)) continue;
        if (x < guard + 1 || x > N - guard) continue;
        ok[k] = 1;
        per[k] = PeakSample{s.t, x, height};
    }

    // pick the longest contiguous qualifying run
    size_t best_begin = 0, best_len = 0, run_begin = 0, run_len = 0;
    for (size_t k = 0; k <= traj.snapshots.size(); ++k) {
        if (k < traj.snapshots.size() && ok[k]) {
            if (run_len == 0) run_begin = k;
            ++run_len;
        } else {
            if (run_len > best_len) {
                best_len = run_len;
                best_begin = run_begin;
            }
            run_len = 0;
        }
    }

    if (static_cast<int>(best_len) < min_count) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "no tracked pulse: %zu qualifying snapshots inside the "
                      "guard window (need %d)",
                      best_len, min_count);
        throw NoPulse(buf);
    }
    TrackedPeaks out;
    for (size_t k = best_begin; k < best_begin + best_len; ++k) {
        out.samples.push_back(per[k]);
        out.snapshot_index.push_back(static_cast<int>(k));
    }
    return out;
}

// least-squares slope of y against t
double lsq_slope(const std::vector<double>& t, const std::vector<double>& y) {
    const size_t n = t.size();
    double mt = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mt += t[i];
        my += y[i];
    }
    mt /= n;
    my /= n;
    double num = 0, den = 0;
    for (size_t i = 0; i < n; ++i) {
        num += (t[i] - mt) * (y[i] - my);
        den += (t[i] - mt) * (t[i] - mt);
    }
    if (den == 0.0) throw ValidationError("degenerate abscissa in slope fit");
    return num / den;
}

}  // namespace

std::vector<PeakSample> track_peak(const Trajectory& traj, int min_count) {
    return track_peak_indexed(traj, min_count).samples;
}

WaveMeasurement measure(const Trajectory& traj, double width_threshold) {
    if (!(width_threshold > 0.0) || !(width_threshold < 1.0))
        throw ValidationError("width threshold must lie in (0,1)");
    const TrackedPeaks track = track_peak_indexed(traj, 10);
    const int N = traj.snapshots.front().size();
    const int guard = guard_band(N);

    WaveMeasurement m;
    m.guard = guard;
    m.t_begin = track.samples.front().t;
    m.t_end = track.samples.back().t;

    std::vector<double> ts, xs;
    for (const PeakSample& s : track.samples) {
        ts.push_back(s.t);
        xs.push_back(s.x);
    }
    m.speed = lsq_slope(ts, xs);

    // central snapshot of the tracked window
    const size_t mid = track.samples.size() / 2;
    const LatticeState& prof = traj.snapshots[track.snapshot_index[mid]];
    m.profile = prof;
    m.peak_x = track.samples[mid].x;

    // full width of A at width_threshold * interpolated peak height
    {
        const double level = width_threshold * track.samples[mid].height;
        int j0 = 0;
        for (int j = 1; j < N; ++j)
            if (prof.A[j] > prof.A[j0]) j0 = j;
        int il = -1;
        for (int i = j0; i >= 0; --i)
            if (prof.A[i] <= level) {
                il = i;
                break;
            }
        int ir = -1;
        for (int i = j0; i < N; ++i)
            if (prof.A[i] <= level) {
                ir = i;
                break;
            }
        if (il < 0 || ir < 0)
            throw WidthUndefined(
                "width level is not crossed on both flanks inside the row");
        // linear interpolation of the crossings (1-based coordinates)
        const double xl =
            (il + 1) + (level - prof.A[il]) / (prof.A[il + 1] - prof.A[il]);
        const double xr =
            (ir + 1) - (level - prof.A[ir]) / (prof.A[ir - 1] - prof.A[ir]);
        m.width = xr - xl;
    }

    // component suprema over the tracked window, interior cells only
    for (size_t k = 0; k < track.samples.size(); ++k) {
        m.hA = std::max(m.hA, track.samples[k].height);
        const LatticeState& s = traj.snapshots[track.snapshot_index[k]];
        for (int j = guard; j < N - guard; ++j) {
            m.hP = std::max(m.hP, s.P[j]);
            m.hR = std::max(m.hR, s.R[j]);
        }
    }
    return m;
}

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ValidationError("power-law fit: size mismatch");
    if (x.size() < 3) throw ValidationError("power-law fit needs >= 3 points");
    std::vector<double> lx, ly;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw ValidationError("power-law fit needs positive data");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    ScalingFit fit;
    fit.n_points = static_cast<int>(x.size());
    fit.exponent = lsq_slope(lx, ly);
    double mlx = 0, mly = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        mlx += lx[i];
        mly += ly[i];
    }
    mlx /= lx.size();
    mly /= ly.size();
    fit.log_prefactor = mly - fit.exponent * mlx;
    double ss = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.log_prefactor + fit.exponent * lx[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / lx.size());
    return fit;
}

Trajectory run_pulse(const ModelParams& p, double a_init, const SimOptions& opt) {
    if (!(a_init > 0.0)) throw ValidationError("pulse amplitude must be positive");
    LatticeState s0 = pulse_initial_state(opt.N, a_init);
    const double dt = opt.dt > 0.0 ? opt.dt : 0.8 * default_dt(p, s0);
    double t_end = opt.t_end;
    if (t_end <= 0.0) {
        // rough horizon: assume the emergent pulse height is a modest fraction
        // of the loaded amplitude and use the leading-order speed law
        const DerivedConstants dc = derived_constants(p);
        const double c_pred = dc.c_star * std::pow(0.35 * a_init, 0.4);
        t_end = 1.15 * (opt.N - guard_band(opt.N)) / c_pred;
    }
    int sample_every = opt.sample_every;
    if (sample_every <= 0)
        sample_every = std::max(1, static_cast<int>(std::llround(t_end / (640.0 * dt))));
    return integrate(s0, p, ClosedRow{}, t_end, dt, sample_every);
}

SweepResult sweep_and_fit(const ModelParams& p, const std::vector<double>& a_list,
                          const SimOptions& opt) {
    if (a_list.size() < 3) throw ValidationError("sweep needs >= 3 amplitudes");
    SweepResult res;
    std::vector<double> hA, speed, width, hP, hR;
    for (double a : a_list) {
        const Trajectory traj = run_pulse(p, a, opt);
        SweepPoint pt;
        pt.a_init = a;
        pt.m = measure(traj, opt.width_threshold);
        hA.push_back(pt.m.hA);
        speed.push_back(pt.m.speed);
        width.push_back(pt.m.width);
        hP.push_back(pt.m.hP);
        hR.push_back(pt.m.hR);
        res.points.push_back(std::move(pt));
    }
    res.speed_fit = fit_power_law(hA, speed);
    res.width_fit = fit_power_law(hA, width);
    res.hP_fit = fit_power_law(hA, hP);
    res.hR_fit = fit_power_law(hA, hR);
    return res;
}

namespace {

// linear interpolation of a field sampled at 1-based integer cells; zero
// outside the row
double interp_cells(const std::vector<double>& f, double pos) {
    const int n = static_cast<int>(f.size());
    const double s = pos - 1.0;  // 0-based fractional index
    if (s <= -1.0 || s >= n) return 0.0;
    if (s < 0.0) return (s + 1.0) * f[0];
    const int i = static_cast<int>(std::floor(s));
    const double w = s - i;
    const double right = (i + 1 < n) ? f[i + 1] : 0.0;
    return (1.0 - w) * f[i] + w * right;
}

}  // namespace

RescaledProfile rescale_profile(const WaveMeasurement& m, double x_half, int n) {
    if (!(m.hA > 0.0)) throw ValidationError("rescale needs a positive amplitude");
    const double sx = std::pow(m.hA, 0.4);  // hA^{2/5}: cell -> wave-frame X
    RescaledProfile r;
    r.A = uniform_grid(x_half, n);
    r.P = uniform_grid(x_half, n);
    r.R = uniform_grid(x_half, n);
    const double sA = m.hA;
    const double sP = std::pow(m.hA, 0.2);
    const double sR = std::pow(m.hA, 0.4);
    for (int i = 0; i < n; ++i) {
        const double pos = m.peak_x + r.A.x(i) / sx;
        r.A.v[i] = interp_cells(m.profile.A, pos) / sA;
        r.P.v[i] = interp_cells(m.profile.P, pos) / sP;
        r.R.v[i] = interp_cells(m.profile.R, pos) / sR;
    }
    return r;
}

double sup_distance(const GridFunction& f, const std::function<double(double)>& ref,
                    double s) {
    double d = 0.0;
    for (int i = 0; i < f.n; ++i)
        d = std::max(d, std::fabs(f.v[i] - ref(f.x(i) - s)));
    return d;
}

AlignResult align_to_reference(const GridFunction& f,
                               const std::function<double(double)>& ref,
                               double s_lo, double s_hi) {
    if (!(s_hi > s_lo)) throw ValidationError("alignment interval is empty");
    // coarse scan
    const int n_scan = 201;
    double best_s = s_lo, best_d = sup_distance(f, ref, s_lo);
    for (int k = 1; k < n_scan; ++k) {
        const double s = s_lo + (s_hi - s_lo) * k / (n_scan - 1);
        const double d = sup_distance(f, ref, s);
        if (d < best_d) {
            best_d = d;
            best_s = s;
        }
    }
    // golden-section refinement around the best coarse sample
    const double step = (s_hi - s_lo) / (n_scan - 1);
    double a = std::max(s_lo, best_s - step), b = std::min(s_hi, best_s + step);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = sup_distance(f, ref, x1), f2 = sup_distance(f, ref, x2);
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = sup_distance(f, ref, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = sup_distance(f, ref, x2);
        }
    }
    AlignResult r;
    r.shift = 0.5 * (a + b);
    r.distance = sup_distance(f, ref, r.shift);
    if (best_d < r.distance) {
        r.shift = best_s;
        r.distance = best_d;
    }
    return r;
}

std::vector<PulseCensus> census(const Trajectory& traj, double min_height,
                                int min_separation) {
    if (!(min_height > 0.0)) throw ValidationError("census needs min_height > 0");
    std::vector<PulseCensus> out;
    for (const LatticeState& s : traj.snapshots) {
        const int N = s.size();
        struct Cand {
            double x, h;
        };
        std::vector<Cand> cand;
        for (int j = 1; j + 1 < N; ++j) {
            if (s.A[j] >= s.A[j - 1] && s.A[j] > s.A[j + 1] && s.A[j] >= min_height) {
                double offset, height;
                refine_peak(s.A[j - 1], s.A[j], s.A[j + 1], offset, height);
                cand.push_back({(j + 1) + offset, height});
            }
        }
        // greedy suppression of peaks closer than min_separation (keep taller)
        std::sort(cand.begin(), cand.end(),
                  [](const Cand& a, const Cand& b) { return a.h > b.h; });
        std::vector<Cand> kept;
        for (const Cand& c : cand) {
            bool close = false;
            for (const Cand& k : kept)
                if (std::fabs(c.x - k.x) < min_separation) {
                    close = true;
                    break;
                }
            if (!close) kept.push_back(c);
        }
        std::sort(kept.begin(), kept.end(),
                  [](const Cand& a, const Cand& b) { return a.x < b.x; });
        PulseCensus pc;
        pc.t = s.t;
        for (const Cand& c : kept) {
            pc.x.push_back(c.x);
            pc.height.push_back(c.h);
        }
        out.push_back(std::move(pc));
    }
    return out;
}

int max_coexisting(const std::vector<PulseCensus>& seq) {
    size_t m = 0;
    for (const PulseCensus& pc : seq) m = std::max(m, pc.x.size());
    return static_cast<int>(m);
}

int count_merges(const std::vector<PulseCensus>& seq, int N) {
    int merges = 0;
    const double match_radius = 10.0;
    for (size_t k = 1; k < seq.size(); ++k) {
        const PulseCensus& prev = seq[k - 1];
        const PulseCensus& cur = seq[k];
        if (cur.x.empty()) continue;
        // nearest current peak for every previous peak
        std::map<int, int> mapped;  // current index -> count of close parents
        for (double xp : prev.x) {
            int best = 0;
            for (size_t i = 1; i < cur.x.size(); ++i)
                if (std::fabs(cur.x[i] - xp) < std::fabs(cur.x[best] - xp))
                    best = static_cast<int>(i);
            if (std::fabs(cur.x[best] - xp) < match_radius &&
                cur.x[best] > 10.0 && cur.x[best] < N - 10.0)
                ++mapped[best];
        }
        for (const auto& [i, cnt] : mapped)
            if (cnt > 1) merges += cnt - 1;
    }
    return merges;
}

namespace {

struct Track {
    int begin = 0;                // census index of first entry
    std::vector<double> t, x, h;  // one entry per census snapshot
    bool open = true;
};

std::vector<Track> build_tracks(const std::vector<PulseCensus>& seq) {
    std::vector<Track> tracks;
    const double match_radius = 12.0;
    for (size_t k = 0; k < seq.size(); ++k) {
        const PulseCensus& pc = seq[k];
        std::vector<char> peak_used(pc.x.size(), 0);
        // greedy nearest matching of open tracks to current peaks
        struct Pair {
            double d;
            int track, peak;
        };
        std::vector<Pair> pairs;
        for (size_t ti = 0; ti < tracks.size(); ++ti) {
            if (!tracks[ti].open) continue;
            for (size_t pi = 0; pi < pc.x.size(); ++pi) {
                const double d = std::fabs(pc.x[pi] - tracks[ti].x.back());
                if (d < match_radius)
                    pairs.push_back({d, static_cast<int>(ti), static_cast<int>(pi)});
            }
        }
        std::sort(pairs.begin(), pairs.end(),
                  [](const Pair& a, const Pair& b) { return a.d < b.d; });
        std::vector<char> track_matched(tracks.size(), 0);
        for (const Pair& pr : pairs) {
            if (track_matched[pr.track] || peak_used[pr.peak]) continue;
            track_matched[pr.track] = 1;
            peak_used[pr.peak] = 1;
            tracks[pr.track].t.push_back(pc.t);
            tracks[pr.track].x.push_back(pc.x[pr.peak]);
            tracks[pr.track].h.push_back(pc.height[pr.peak]);
        }
        for (size_t ti = 0; ti < tracks.size(); ++ti)
            if (tracks[ti].open && !track_matched[ti]) tracks[ti].open = false;
        for (size_t pi = 0; pi < pc.x.size(); ++pi) {
            if (peak_used[pi]) continue;
            Track tr;
            tr.begin = static_cast<int>(k);
            tr.t.push_back(pc.t);
            tr.x.push_back(pc.x[pi]);
            tr.h.push_back(pc.height[pi]);
            tracks.push_back(std::move(tr));
        }
    }
    return tracks;
}

}  // namespace

TallerFasterStats taller_faster(const std::vector<PulseCensus>& seq, int N) {
    const std::vector<Track> tracks = build_tracks(seq);
    TallerFasterStats stats;
    const int min_overlap = 6;
    // The height/speed ordering is a statement about free travelling pulses,
    // so a pair only counts when both tracks behave like ones over the shared
    // window: each must actually advance, hold a steady height (a pulse still
    // growing at the influx end has no single height to order by), keep clear
    // of the formation/absorption zones at the row ends, and stay far enough
    // apart that the two are not already interacting.  Long overlaps are
    // compared over their central stretch, where both heights are steadiest.
    const double min_separation = 25.0;
    const double min_travel = 3.0;
    const double max_height_drift = 0.15;
    const int window_cap = 24;
    const double guard = guard_band(N);
    for (size_t a = 0; a < tracks.size(); ++a) {
        for (size_t b = a + 1; b < tracks.size(); ++b) {
            const Track& ta = tracks[a];
            const Track& tb = tracks[b];
            int lo = std::max(ta.begin, tb.begin);
            int hi = std::min(ta.begin + static_cast<int>(ta.t.size()),
                              tb.begin + static_cast<int>(tb.t.size()));
            if (hi - lo < min_overlap) continue;
            if (hi - lo > window_cap) {
                lo = (lo + hi) / 2 - window_cap / 2;
                hi = lo + window_cap;
            }
            std::vector<double> t1, x1, h1, t2, x2, h2;
            bool interior = true;
            bool separated = true;
            for (int k = lo; k < hi; ++k) {
                const double xa = ta.x[k - ta.begin];
                const double xb = tb.x[k - tb.begin];
                if (xa < guard || xa > N - guard || xb < guard || xb > N - guard) {
                    interior = false;
                    break;
                }
                if (std::fabs(xa - xb) < min_separation) {
                    separated = false;
                    break;
                }
                t1.push_back(ta.t[k - ta.begin]);
                x1.push_back(xa);
                h1.push_back(ta.h[k - ta.begin]);
                t2.push_back(tb.t[k - tb.begin]);
                x2.push_back(xb);
                h2.push_back(tb.h[k - tb.begin]);
            }
            if (!interior || !separated) continue;
            if (std::fabs(x1.back() - x1.front()) < min_travel ||
                std::fabs(x2.back() - x2.front()) < min_travel)
                continue;
            const double sa = lsq_slope(t1, x1);
            const double sb = lsq_slope(t2, x2);
            double ha = 0, hb = 0;
            double lo1 = h1.front(), hi1 = h1.front();
            double lo2 = h2.front(), hi2 = h2.front();
            for (double v : h1) {
                ha += v;
                lo1 = std::min(lo1, v);
                hi1 = std::max(hi1, v);
            }
            for (double v : h2) {
                hb += v;
                lo2 = std::min(lo2, v);
                hi2 = std::max(hi2, v);
            }
            ha /= h1.size();
            hb /= h2.size();
            if (hi1 - lo1 > max_height_drift * ha || hi2 - lo2 > max_height_drift * hb)
                continue;
            // skip near-equal heights: speed ordering is then noise
            if (std::fabs(ha - hb) < 0.03 * std::max(ha, hb)) continue;
            ++stats.total;
            if ((ha > hb) == (sa > sb)) ++stats.consistent;
        }
    }
    return stats;
}

}  // namespace auxinwave
