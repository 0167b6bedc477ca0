// Acceptance gate: one line per criterion, nonzero exit if any fails.
//
// Every tolerance is pinned here, next to the check it guards.  The program
// prints measured values so a failing line is directly actionable.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "auxinwave/errors.hpp"
#include "auxinwave/grid.hpp"
#include "auxinwave/lattice.hpp"
#include "auxinwave/longwave.hpp"
#include "auxinwave/metrology.hpp"
#include "auxinwave/model.hpp"
#include "auxinwave/profiles.hpp"

using namespace auxinwave;

namespace {

int g_failures = 0;

void record(int id, bool pass, const std::string& detail) {
    std::printf("[%2d] %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run_criterion(int id, const std::function<void(int)>& body) {
    try {
        body(id);
    } catch (const std::exception& e) {
        record(id, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

bool in_range(double v, double lo, double hi) { return v >= lo && v <= hi; }

double sum(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

int main() {
    const ModelParams params{};
    const DerivedConstants dc = derived_constants(params);
    const ProfileContext ctx = make_profile_context(params, dc.c_star, 0.0);

    // ----- shared amplitude sweep for criteria 1-3 --------------------------
    const std::vector<double> amplitudes = {0.05, 0.1, 0.15, 0.2, 0.3};
    SweepResult sweep;
    bool sweep_ok = false;
    std::string sweep_error;
    try {
        SimOptions opt;  // N = 500, automatic dt / horizon / sampling
        sweep = sweep_and_fit(params, amplitudes, opt);
        sweep_ok = true;
    } catch (const std::exception& e) {
        sweep_error = e.what();
    }

    // [1] power-law exponents of speed, width and component heights vs hA
    run_criterion(1, [&](int id) {
        if (!sweep_ok) {
            record(id, false, "sweep failed: " + sweep_error);
            return;
        }
        const double es = sweep.speed_fit.exponent;
        const double ew = sweep.width_fit.exponent;
        const double ep = sweep.hP_fit.exponent;
        const double er = sweep.hR_fit.exponent;
        const bool pass = in_range(es, 0.35, 0.45) && in_range(ew, -0.45, -0.35) &&
                          in_range(ep, 0.15, 0.25) && in_range(er, 0.35, 0.45);
        // control sweep at lower amplitudes: the exponent biases are
        // finite-amplitude corrections, so they must shrink toward the ideal
        // 0.4 / -0.4 / 0.2 / 0.4 as the pulses get smaller
        std::string control;
        try {
            const SweepResult low =
                sweep_and_fit(params, {0.0125, 0.025, 0.05, 0.1}, SimOptions{});
            control = fmt("; control sweep at amplitudes 0.0125-0.1: speed %.4f, "
                          "width %.4f, hP %.4f, hR %.4f",
                          low.speed_fit.exponent, low.width_fit.exponent,
                          low.hP_fit.exponent, low.hR_fit.exponent);
        } catch (const std::exception& e) {
            control = std::string("; control sweep failed: ") + e.what();
        }
        record(id, pass,
               fmt("scaling exponents vs hA at amplitudes 0.05-0.3: speed %.4f "
                   "(want [0.35,0.45]), width %.4f ([-0.45,-0.35]), hP %.4f "
                   "([0.15,0.25]), hR %.4f ([0.35,0.45])",
                   es, ew, ep, er) +
                   control);
    });

    // [2] smallest amplitude: prefactors near the limiting speed and width
    run_criterion(2, [&](int id) {
        if (!sweep_ok) {
            record(id, false, "sweep failed: " + sweep_error);
            return;
        }
        const WaveMeasurement& m = sweep.points.front().m;  // a = 0.05
        const double scale = std::pow(m.hA, 0.4);
        const double c_ratio = m.speed / (dc.c_star * scale);
        const double w_ratio = m.width * scale / w_star(ctx, 0.05);
        const bool pass =
            in_range(c_ratio, 0.85, 1.15) && in_range(w_ratio, 0.85, 1.15);
        record(id, pass,
               fmt("limiting-law prefactors at hA=%.4g: c/(c* hA^0.4) = %.4f, "
                   "w hA^0.4 / w* = %.4f (want [0.85,1.15])",
                   m.hA, c_ratio, w_ratio));
    });

    // [3] rescaled profiles approach the closed forms as amplitude shrinks
    run_criterion(3, [&](int id) {
        if (!sweep_ok) {
            record(id, false, "sweep failed: " + sweep_error);
            return;
        }
        const double supP = zeta(ctx, -40.0);   // sup of the P profile
        const double supR = phi_R(ctx, -40.0);  // sup of the R profile
        std::vector<double> dA, dP, dR;
        for (const SweepPoint& pt : sweep.points) {
            const RescaledProfile r = rescale_profile(pt.m);
            const AlignResult a = align_to_reference(
                r.A, [&](double X) { return sigma(ctx, X); }, -4.0, 4.0);
            dA.push_back(a.distance);  // sup of the A profile is exactly 1
            dP.push_back(sup_distance(
                             r.P, [&](double X) { return zeta(ctx, X); }, a.shift) /
                         supP);
            dR.push_back(sup_distance(
                             r.R, [&](double X) { return phi_R(ctx, X); }, a.shift) /
                         supR);
        }
        bool monotone = true;
        for (size_t i = 1; i < dA.size(); ++i) {
            // amplitudes ascend, so distances must too
            if (!(dA[i] > dA[i - 1] && dP[i] > dP[i - 1] && dR[i] > dR[i - 1]))
                monotone = false;
        }
        const bool pass =
            monotone && dA.front() < 0.1 && dP.front() < 0.15 && dR.front() < 0.15;
        // the R distance is dominated by the measured wake plateau sitting
        // above its limiting level; that excess decays like ~2.7 hA^0.42, so
        // it stays a flat offset across the comparison window rather than a
        // shape error
        record(id, pass,
               fmt("profile distances (smallest amplitude): A %.4f (<0.1), "
                   "P %.4f (<0.15), R %.4f (<0.15); monotone over sweep: %s "
                   "[A: %.3f %.3f %.3f %.3f %.3f; R: %.3f %.3f %.3f %.3f %.3f]",
                   dA.front(), dP.front(), dR.front(), monotone ? "yes" : "no",
                   dA[0], dA[1], dA[2], dA[3], dA[4], dR[0], dR[1], dR[2], dR[3],
                   dR[4]) +
                   "; R offset = wake plateau excess over its limit, ~2.7*hA^0.42");
    });

    // [4] closed-form pulse area satisfies its equation to near round-off
    run_criterion(4, [&](int id) {
        const double cubic =
            params.alpha * dc.kappa * dc.tau1 / (6.0 * dc.c_star * dc.c_star);
        const double supS = big_sigma(ctx, -40.0);
        double worst = 0.0;
        const int n = 2048;
        for (int i = 0; i < n; ++i) {
            const double X = -10.0 + 19.0 * i / (n - 1);
            const double S = big_sigma(ctx, X);
            const double res =
                dc.tau2 * (-sigma(ctx, X)) + dc.c_star * S - cubic * S * S * S;
            worst = std::max(worst, std::fabs(res));
        }
        const double bound = 1e-12 * supS;
        record(id, worst < bound,
               fmt("pulse-area equation residual on 2048-point grid: %.3e "
                   "(< %.3e = 1e-12 * sup)",
                   worst, bound));
    });

    // [5] conservation laws on a periodic ring
    run_criterion(5, [&](int id) {
        const int N = 64;
        LatticeState s0;
        s0.t = 0.0;
        s0.A.resize(N);
        s0.P.assign(N, 0.01);
        s0.R.assign(N, 0.0);
        for (int j = 0; j < N; ++j)
            s0.A[j] = 0.05 + 0.3 * std::exp(-std::pow((j - 32.0) / 6.0, 2));
        const double massA = sum(s0.A);

        const Trajectory tr = integrate(s0, params, Periodic{}, 50.0, 0.01, 100);

        double mass_drift = 0.0, balance_err = 0.0;
        bool monoR = true;
        for (size_t k = 0; k < tr.snapshots.size(); ++k) {
            const LatticeState& s = tr.snapshots[k];
            mass_drift =
                std::max(mass_drift, std::fabs(sum(s.A) - massA) / massA);
            if (k > 0) {
                const LatticeState& prev = tr.snapshots[k - 1];
                const double slope =
                    (sum(s.P) + sum(s.R) - sum(prev.P) - sum(prev.R)) /
                    (s.t - prev.t);
                balance_err = std::max(
                    balance_err, std::fabs(slope - params.alpha * massA) /
                                     (params.alpha * massA));
                for (int j = 0; j < N; ++j)
                    if (s.R[j] < prev.R[j] - 1e-14) monoR = false;
            }
        }
        const bool pass = mass_drift < 1e-9 && balance_err < 1e-6 && monoR;
        record(id, pass,
               fmt("periodic ring: mass drift %.3e (<1e-9), production balance "
                   "%.3e (<1e-6), polarized component nondecreasing: %s",
                   mass_drift, balance_err, monoR ? "yes" : "no"));
    });

    // [6] integrator converges at fourth order (Richardson)
    run_criterion(6, [&](int id) {
        const LatticeState s0 = pulse_initial_state(60, 0.3);
        auto final_state = [&](double dt) {
            const int steps = static_cast<int>(std::lround(3.0 / dt));
            return integrate(s0, params, ClosedRow{}, 3.0, dt, steps)
                .snapshots.back();
        };
        const LatticeState ref = final_state(0.0025);
        auto err = [&](const LatticeState& s) {
            double m = 0.0;
            for (int j = 0; j < s.size(); ++j) {
                m = std::max(m, std::fabs(s.A[j] - ref.A[j]));
                m = std::max(m, std::fabs(s.P[j] - ref.P[j]));
                m = std::max(m, std::fabs(s.R[j] - ref.R[j]));
            }
            return m;
        };
        const double e1 = err(final_state(0.04));
        const double e2 = err(final_state(0.02));
        const double order = std::log2(e1 / e2);
        record(id, in_range(order, 3.7, 4.1),
               fmt("empirical integrator order %.3f (want [3.7,4.1]); "
                   "errors %.3e -> %.3e",
                   order, e1, e2));
    });

    // [7] multiplier family: nu^(1/3)-normalized gap bounded; exact inverse
    run_criterion(7, [&](int id) {
        SolverConfig cfg;
        cfg.c0 = dc.c_star;
        cfg.n = 8192;
        cfg.L = 8.0;

        const std::vector<double> nus = {0.2, 0.1, 0.05, 0.025};
        const std::vector<SymbolGap> table = symbol_convergence_table(nus, cfg);
        bool bounded = true;
        for (size_t i = 0; i < table.size(); ++i) {
            if (!std::isfinite(table[i].ratio) || table[i].ratio <= 0.0)
                bounded = false;
            // no growth as nu decreases (2% slack for the scan grid)
            if (i > 0 && table[i].ratio > 1.02 * table[i - 1].ratio)
                bounded = false;
        }

        const SolverConfig inv_cfg = [&] {
            SolverConfig c = cfg;
            c.n = 8192;
            c.L = 12.0;
            return c;
        }();
        const GridFunction u =
            tabulate(12.0, 8192, [](double x) { return std::exp(-x * x); });
        const double inv1 = sup_norm(gf_sub(
            apply_multiplier(apply_wave_operator(u, inv_cfg), 0.0, inv_cfg), u));
        const double inv2 = sup_norm(gf_sub(
            apply_wave_operator(apply_multiplier(u, 0.0, inv_cfg), inv_cfg), u));
        const bool inv_ok =
            inv1 < inv_cfg.quad_tol && inv2 < inv_cfg.quad_tol;

        record(id, bounded && inv_ok,
               fmt("symbol gap / nu^(1/3): %.4f %.4f %.4f %.4f (bounded: %s); "
                   "inverse identity errors %.2e / %.2e (< %.0e)",
                   table[0].ratio, table[1].ratio, table[2].ratio, table[3].ratio,
                   bounded ? "yes" : "no", inv1, inv2, inv_cfg.quad_tol));
    });

    // [8] right inverse of the linearized operator; translation mode in kernel
    run_criterion(8, [&](int id) {
        SolverConfig cfg;
        cfg.c0 = dc.c_star;
        cfg.n = 16384;
        cfg.L = 12.0;

        const double centers[] = {0.0, 1.0, -2.0, 0.5, -1.0};
        const double widths[] = {1.0, 0.7, 1.3, 2.0, 0.6};
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const double x0 = centers[k], s = widths[k];
            const GridFunction g = tabulate(cfg.L, cfg.n, [&](double X) {
                return std::exp(-(X - x0) * (X - x0) / (s * s));
            });
            const GridFunction TSg = op_T(op_S(g, cfg), cfg);
            worst = std::max(worst, l2_norm(gf_sub(TSg, g)) / l2_norm(g));
        }

        const GridFunction sp =
            tabulate(cfg.L, cfg.n, [&](double X) { return sigma_prime(ctx, X); });
        const double kernel = l2_norm(op_T(sp, cfg)) / l2_norm(sp);

        const bool pass = worst < 1e-6 && kernel < cfg.quad_tol;
        record(id, pass,
               fmt("T(S(g)) = g on 5 Gaussians: worst rel. error %.3e (<1e-6); "
                   "translation mode |T(sigma')|/|sigma'| = %.3e (< %.0e)",
                   worst, kernel, cfg.quad_tol));
    });

    // [9] fixed-point corrections: convergence, residuals, O(nu^(1/3)) size
    run_criterion(9, [&](int id) {
        auto solve = [&](double nu) {
            SolverConfig cfg;
            cfg.c0 = dc.c_star;
            cfg.nu = nu;
            if (nu > 0.0) {
                // certifying configuration: the 5e-8 stopping tolerance pins
                // the iteration lag below the 1e-8 residual gate and needs the
                // n = 8192 rounding floor; damping keeps the nu = 0.2 sweep
                // contractive (the fixed point is damping-independent)
                cfg.n = 8192;
                cfg.damping = 0.5;
                cfg.picard_tol = 5e-8;
            }
            return picard_solve(cfg);
        };

        const FixedPointResult zero = solve(0.0);
        const bool zero_ok = zero.iterations == 1 && zero.eta_norm == 0.0;

        const std::vector<double> nus = {0.05, 0.1, 0.2};
        std::vector<double> norms, ratios;
        double worst_res = 0.0;
        for (double nu : nus) {
            const FixedPointResult r = solve(nu);
            worst_res = std::max({worst_res, r.residual1, r.residual2});
            norms.push_back(r.eta_norm);
            ratios.push_back(r.eta_norm / std::cbrt(nu));
        }
        const bool res_ok = worst_res < 1e-8;
        const bool mono = norms[0] < norms[1] && norms[1] < norms[2];
        const double rmax = *std::max_element(ratios.begin(), ratios.end());
        const double rmin = *std::min_element(ratios.begin(), ratios.end());
        const bool bounded = rmax / rmin < 4.0;

        record(id, zero_ok && res_ok && mono && bounded,
               fmt("fixed point: worst residual %.2e (<1e-8); eta/nu^(1/3) = "
                   "%.4f %.4f %.4f (bounded: %s, monotone: %s); nu=0 exact: %s",
                   worst_res, ratios[0], ratios[1], ratios[2],
                   bounded ? "yes" : "no", mono ? "yes" : "no",
                   zero_ok ? "yes" : "no"));
    });

    // [10] sustained influx with turnover: coexistence, merges, taller-faster
    run_criterion(10, [&](int id) {
        ModelParams p = params;
        p.delta = 0.1;
        p.k_2 = 0.2;
        const Trajectory tr = run_wavetrain(p, 0.025, 500, 6000.0, 0.02, 250);
        const std::vector<PulseCensus> seq = census(tr, 0.02, 5);
        const int coexist = max_coexisting(seq);
        const int merges = count_merges(seq, 500);
        const TallerFasterStats tf = taller_faster(seq, 500);
        const bool pass = coexist >= 2 && merges >= 1 && tf.total >= 1 &&
                          tf.consistent == tf.total;
        record(id, pass,
               fmt("wavetrain: max coexisting pulses %d (>=2), merge events %d "
                   "(>=1), taller-faster pairs %d/%d consistent",
                   coexist, merges, tf.consistent, tf.total));
    });

    std::printf("RESULT: %d/10 criteria passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
