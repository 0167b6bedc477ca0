#include "auxinwave/longwave.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <utility>

#include "auxinwave/errors.hpp"
#include "auxinwave/profiles.hpp"

namespace auxinwave {

void validate(const SolverConfig& cfg) {
    validate(cfg.params);
    if (!(cfg.nu >= 0.0) || !std::isfinite(cfg.nu))
        throw ValidationError("nu must be finite and >= 0");
    if (!(cfg.c0 > 0.0) || !std::isfinite(cfg.c0))
        throw ValidationError("c0 must be positive and finite");
    if (!std::isfinite(cfg.theta)) throw ValidationError("theta must be finite");
    const double qmax = cfg.c0 / cfg.params.T_diff;
    if (cfg.q != 0.0 && !(cfg.q > 0.0 && cfg.q < qmax))
        throw ValidationError("weight rate q must lie in (0, c0/tau2)");
    if (!(cfg.quad_tol > 0.0)) throw ValidationError("quad_tol must be positive");
    if (!(cfg.picard_tol > 0.0)) throw ValidationError("picard_tol must be positive");
    if (cfg.max_iter < 1) throw ValidationError("max_iter must be >= 1");
    if (!(cfg.damping > 0.0) || !(cfg.damping <= 1.0))
        throw ValidationError("damping must lie in (0, 1]");
    if (!(cfg.L >= 0.0) || !std::isfinite(cfg.L))
        throw ValidationError("L must be >= 0 (0 selects automatic sizing)");
    if (cfg.n < 256 || !is_power_of_two(cfg.n))
        throw ValidationError("n must be a power of two >= 256");
    if (!(cfg.tail_tol > 0.0)) throw ValidationError("tail_tol must be positive");
}

double weight_rate(const SolverConfig& cfg) {
    return cfg.q != 0.0 ? cfg.q : 0.5 * cfg.c0 / cfg.params.T_diff;
}

double auto_half_width(const SolverConfig& cfg) {
    const ProfileContext ctx = make_profile_context(cfg.params, cfg.c0, cfg.theta);
    for (double L = 4.0; L <= 64.0; L += 0.5)
        if (big_sigma(ctx, L) / big_sigma(ctx, -L) < 1e-12) return L;
    throw ValidationError("profile decays too slowly to truncate; set L explicitly");
}

namespace {

void check_nu(double nu) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw ValidationError("operator shift nu must be finite and >= 0");
}

void check_pair(const GridFunction& f, const GridFunction& g) {
    if (f.n != g.n || f.L != g.L)
        throw ValidationError("operator arguments must share one grid");
}

// f shifted by nu together with the exponential-weight data:
// G = cumulative of f(.+nu) from the left, rate c = kappa sqrt(nu) / c0.
struct ExpWeight {
    GridFunction fs;
    GridFunction G;
    double c = 0.0;
};

ExpWeight exp_weight(const GridFunction& f, double nu, const SolverConfig& cfg) {
    ExpWeight w;
    w.fs = shifted(f, nu);
    w.G = cumulative_from_left(w.fs);
    w.c = derived_constants(cfg.params).kappa * std::sqrt(nu) / cfg.c0;
    return w;
}

// closed-form tables for the wave-frame linearization on a given grid
struct WaveTables {
    GridFunction sigma_g;  // leading-order pulse profile
    GridFunction rho_g;    // linearized transport speed, rho = P'
    GridFunction rhop_g;   // rho'
    GridFunction P_g;      // antiderivative of rho (log-space closed form)
};

WaveTables wave_tables(const SolverConfig& cfg, double L, int n) {
    const ProfileContext ctx = make_profile_context(cfg.params, cfg.c0, cfg.theta);
    const double tau2 = ctx.dc.tau2;
    const double r = ctx.r;
    // alpha kappa tau1 / c0^2 (the closed form of the transport feedback)
    const double afac = ctx.A_minus / (cfg.c0 * cfg.c0);

    WaveTables t;
    t.sigma_g = uniform_grid(L, n);
    t.rho_g = uniform_grid(L, n);
    t.rhop_g = uniform_grid(L, n);
    t.P_g = uniform_grid(L, n);
    for (int i = 0; i < n; ++i) {
        const double X = t.sigma_g.x(i);
        const double S = big_sigma(ctx, X);
        t.sigma_g.v[i] = sigma(ctx, X);
        t.rho_g.v[i] = (cfg.c0 - 0.5 * afac * S * S) / tau2;
        t.rhop_g.v[i] = afac / tau2 * S * t.sigma_g.v[i];
        const double u = 2.0 * cfg.c0 * X / tau2 + cfg.theta;
        const double lse =
            (u > 30.0)
                ? std::log(ctx.B_minus) + u +
                      std::log1p(ctx.A_minus / ctx.B_minus * std::exp(-u))
                : std::log(ctx.A_minus + ctx.B_minus * std::exp(u));
        t.P_g.v[i] = 1.5 * lse - 2.0 * r * X;
    }
    return t;
}

}  // namespace

double op_E(const GridFunction& f, double V, double X, const SolverConfig& cfg) {
    validate(cfg);
    if (std::fabs(V) > f.L || std::fabs(X) > f.L) {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "op_E endpoints (%.4g, %.4g) must lie in [-%.4g, %.4g]", V, X,
                      f.L, f.L);
        throw OutOfDomain(buf);
    }
    const GridFunction G = cumulative_from_left(f);
    auto eval = [&](double x) {
        const double s = (x + f.L) / f.h();
        const int i = std::clamp(static_cast<int>(std::floor(s)), 0, f.n - 1);
        if (i >= f.n - 1) return G.v[f.n - 1];
        const double w = s - i;
        return (1.0 - w) * G.v[i] + w * G.v[i + 1];
    };
    const DerivedConstants dc = derived_constants(cfg.params);
    return std::exp(dc.kappa / cfg.c0 * (eval(X) - eval(V)));
}

GridFunction op_P1(const GridFunction& f, double nu, const SolverConfig& cfg) {
    validate(cfg);
    check_nu(nu);
    const ExpWeight w = exp_weight(f, nu, cfg);
    GridFunction tmp = f;
    for (int i = 0; i < f.n; ++i) tmp.v[i] = std::exp(-w.c * w.G.v[i]) * f.v[i];
    const GridFunction C = cumulative_from_right(tmp);
    GridFunction out = f;
    const double pref = cfg.params.alpha / cfg.c0;
    for (int i = 0; i < f.n; ++i)
        out.v[i] = pref * std::exp(w.c * w.G.v[i]) * C.v[i];
    return out;
}

GridFunction op_P2(const GridFunction& f, const GridFunction& g, double nu,
                   const SolverConfig& cfg) {
    validate(cfg);
    check_nu(nu);
    check_pair(f, g);
    const ExpWeight w = exp_weight(f, nu, cfg);
    GridFunction tmp = f;
    for (int i = 0; i < f.n; ++i)
        tmp.v[i] = std::exp(-w.c * w.G.v[i]) *
                   nl2_nu(w.fs.v[i], g.v[i], nu, cfg.params);
    const GridFunction C = cumulative_from_right(tmp);
    GridFunction out = f;
    const double pref = 1.0 / cfg.c0;
    for (int i = 0; i < f.n; ++i)
        out.v[i] = pref * std::exp(w.c * w.G.v[i]) * C.v[i];
    return out;
}

GridFunction op_R1(const GridFunction& f, double nu, const SolverConfig& cfg) {
    const GridFunction p1 = op_P1(f, nu, cfg);
    const GridFunction fs = shifted(f, nu);
    const DerivedConstants dc = derived_constants(cfg.params);
    return gf_scale(cumulative_from_right(gf_mul(p1, fs)),
                    dc.kappa * dc.tau1 / cfg.c0);
}

GridFunction op_R2(const GridFunction& f, const GridFunction& g, double nu,
                   const SolverConfig& cfg) {
    const GridFunction p2 = op_P2(f, g, nu, cfg);
    const GridFunction fs = shifted(f, nu);
    const DerivedConstants dc = derived_constants(cfg.params);
    const double snu = std::sqrt(nu);
    GridFunction tmp = f;
    for (int i = 0; i < f.n; ++i)
        tmp.v[i] = snu * dc.kappa * fs.v[i] * p2.v[i] -
                   nl2_nu(fs.v[i], g.v[i], nu, cfg.params);
    return gf_scale(cumulative_from_right(tmp), 1.0 / cfg.c0);
}

GridFunction op_R(const GridFunction& f, const GridFunction& g, double nu,
                  const SolverConfig& cfg) {
    return gf_add(op_R1(f, nu, cfg), gf_scale(op_R2(f, g, nu, cfg), std::sqrt(nu)));
}

GridFunction op_N(const GridFunction& f, const GridFunction& g, double nu,
                  const SolverConfig& cfg) {
    const GridFunction r2 = op_R2(f, g, nu, cfg);
    const GridFunction r1 = op_R1(f, nu, cfg);
    const DerivedConstants dc = derived_constants(cfg.params);
    const double snu = std::sqrt(nu);
    // Back-substituting the wave-frame carrier density (R1/tau1 + R2 before
    // scaling) into the transport kinetics gives the nl1 argument
    // R1 + sqrt(nu) tau1 R2 and the prefactor nu^2 k_a; bookkeeping that kept
    // tau1 attached to R1 would inflate this term by tau1 and destroy both
    // the contraction and the physical polarized-carrier height scale.
    const double pref = nu * nu * cfg.params.k_a;
    GridFunction out = f;
    for (int i = 0; i < f.n; ++i) {
        const double carrier = r1.v[i] + snu * dc.tau1 * r2.v[i];
        out.v[i] = dc.tau1 * r2.v[i] * f.v[i] -
                   pref * nl1_nu(f.v[i], carrier, nu, cfg.params);
    }
    return out;
}

std::complex<double> multiplier_symbol(double k, double nu, const SolverConfig& cfg) {
    check_nu(nu);
    const double tau2 = cfg.params.T_diff;
    if (nu == 0.0) return 1.0 / std::complex<double>(cfg.c0, tau2 * k);
    const double w = nu * k;
    std::complex<double> num, denom;
    if (std::fabs(w) < 1e-4) {
        // series of (1-e^{-iw})/w and (cos w - 1)/w around w = 0
        num = {0.5 * w - w * w * w / 24.0, 1.0 - w * w / 6.0 + w * w * w * w / 120.0};
        denom = {2.0 * tau2 * (-0.5 * w + w * w * w / 24.0), cfg.c0 * nu};
    } else {
        num = {(1.0 - std::cos(w)) / w, std::sin(w) / w};
        denom = {2.0 * tau2 * (std::cos(w) - 1.0) / w, cfg.c0 * nu};
    }
    return nu * num / denom;
}

namespace {

GridFunction spectral_apply(const GridFunction& f, const SolverConfig& cfg,
                            const std::function<std::complex<double>(double)>& symbol,
                            const char* what) {
    if (f.n < 256 || !is_power_of_two(f.n))
        throw ValidationError("spectral application needs a power-of-two grid >= 256");
    require_decaying(f, cfg.tail_tol, what);
    const int n = f.n;
    std::vector<std::complex<double>> a(n), b(n);
    fftw_plan fwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                     reinterpret_cast<fftw_complex*>(b.data()),
                                     FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(b.data()),
                                     reinterpret_cast<fftw_complex*>(a.data()),
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
    for (int i = 0; i < n; ++i) a[i] = f.v[i];
    fftw_execute(fwd);
    const double dk = M_PI / f.L;
    for (int j = 0; j < n; ++j) {
        const int jj = (j <= n / 2) ? j : j - n;
        b[j] *= symbol(jj * dk);
    }
    fftw_execute(bwd);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);

    GridFunction out = f;
    double leak = 0.0;
    double scale = sup_norm(f);
    for (int i = 0; i < n; ++i) {
        out.v[i] = a[i].real() / n;
        leak = std::max(leak, std::fabs(a[i].imag()) / n);
        scale = std::max(scale, std::fabs(out.v[i]));
    }
    if (leak > cfg.quad_tol * std::max(scale, 1e-300)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%s: imaginary part %.3e exceeds %.1e * scale %.3e", what,
                      leak, cfg.quad_tol, scale);
        throw ImaginaryLeak(buf);
    }
    return out;
}

}  // namespace

GridFunction apply_multiplier(const GridFunction& f, double nu,
                              const SolverConfig& cfg) {
    validate(cfg);
    check_nu(nu);
    return spectral_apply(
        f, cfg, [&](double k) { return multiplier_symbol(k, nu, cfg); },
        "multiplier input");
}

GridFunction apply_wave_operator(const GridFunction& f, const SolverConfig& cfg) {
    validate(cfg);
    const double tau2 = cfg.params.T_diff;
    return spectral_apply(
        f, cfg,
        [&](double k) { return std::complex<double>(cfg.c0, tau2 * k); },
        "wave-operator input");
}

namespace {

// Derivative of R1 at sigma in direction f (two-term cumulative form):
//   (alpha kappa tau1 / c0^2) [ Int_X^inf (Int_W^inf sigma) f
//                             + Int_X^inf (Int_W^inf f) sigma ]
GridFunction dr10_two_term(const GridFunction& sg, const GridFunction& f,
                           const SolverConfig& cfg) {
    const DerivedConstants dc = derived_constants(cfg.params);
    const GridFunction S1 = cumulative_from_right(sg);
    const GridFunction F1 = cumulative_from_right(f);
    const GridFunction t1 = cumulative_from_right(gf_mul(S1, f));
    const GridFunction t2 = cumulative_from_right(gf_mul(F1, sg));
    const double pref =
        cfg.params.alpha * dc.kappa * dc.tau1 / (cfg.c0 * cfg.c0);
    return gf_scale(gf_add(t1, t2), pref);
}

// Variation-of-constants march for S.  With Hg = r Int_X^inf g - g:
//   (Sg)(X) = rho(X) K(X) - Hg(X),   K(X) = Int_0^X e^{P(W)-P(X)} Hg(W) dW.
// Per-interval recurrences keep every exponential factor within one grid step,
// so e^{+-P} never materializes.  Quadrature is endpoint-corrected (Hermite)
// product trapezoid, O(h^4) globally.
//
// Moving left the two O(1) terms rho K and Hg cancel to an exponentially
// small difference; to avoid losing it to round-off we integrate by parts
// (valid because rho < 0 strictly left of sigma's peak) and march
//   (Sg)(X) = -rho(X) B(X),  B(X) = e^{-P(X)} [ Hg(0)/rho(0)
//                                   + Int_0^X e^{P(W)} (Hg/rho)'(W) dW ],
// whose increments decay with the data.  If the peak sits at or left of the
// origin (possible for exotic theta) we fall back to the direct form.
GridFunction op_S_impl(const GridFunction& g, const SolverConfig& cfg,
                       const WaveTables& t) {
    check_pair(g, t.sigma_g);
    const int n = g.n;
    const double h = g.h();
    const double r = cfg.c0 / cfg.params.T_diff;
    const int j0 = n / 2;  // the X = 0 node

    const GridFunction Gr = cumulative_from_right(g);
    GridFunction Hg = g;
    for (int i = 0; i < n; ++i) Hg.v[i] = r * Gr.v[i] - g.v[i];
    const GridFunction gp = derivative(g);
    GridFunction Hgp = g;
    for (int i = 0; i < n; ++i) Hgp.v[i] = -r * g.v[i] - gp.v[i];

    const std::vector<double>& rho = t.rho_g.v;
    const std::vector<double>& rhop = t.rhop_g.v;
    const std::vector<double>& P = t.P_g.v;

    GridFunction out = g;

    // rightward march
    {
        std::vector<double> K(static_cast<size_t>(n) - j0, 0.0);
        for (int i = j0; i + 1 < n; ++i) {
            const double w = std::exp(P[i] - P[i + 1]);
            const double u0 = w * Hg.v[i];
            const double u1 = Hg.v[i + 1];
            const double d0 = w * (rho[i] * Hg.v[i] + Hgp.v[i]);
            const double d1 = rho[i + 1] * Hg.v[i + 1] + Hgp.v[i + 1];
            const double qi = 0.5 * h * (u0 + u1) - h * h / 12.0 * (d1 - d0);
            K[i + 1 - j0] = w * K[i - j0] + qi;
        }
        for (int i = j0; i < n; ++i) out.v[i] = rho[i] * K[i - j0] - Hg.v[i];
    }

    // leftward march
    const bool ibp_ok = rho[j0 + 2] < -1e-6;
    if (ibp_ok) {
        // v = (Hg/rho)', needed on [0, j0+2] only (rho < 0 there)
        std::vector<double> v(static_cast<size_t>(j0) + 3, 0.0);
        for (int i = 0; i <= j0 + 2; ++i)
            v[i] = (Hgp.v[i] * rho[i] - Hg.v[i] * rhop[i]) / (rho[i] * rho[i]);
        std::vector<double> vp(static_cast<size_t>(j0) + 1, 0.0);
        vp[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        vp[1] = (v[2] - v[0]) / (2.0 * h);
        for (int i = 2; i <= j0; ++i)
            vp[i] = (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) /
                    (12.0 * h);

        std::vector<double> B(static_cast<size_t>(j0) + 1, 0.0);
        B[j0] = Hg.v[j0] / rho[j0];
        for (int i = j0; i >= 1; --i) {
            const double w = std::exp(P[i] - P[i - 1]);  // <= 1 here
            const double u0 = v[i - 1];
            const double u1 = w * v[i];
            const double d0 = rho[i - 1] * v[i - 1] + vp[i - 1];
            const double d1 = w * (rho[i] * v[i] + vp[i]);
            const double qi = 0.5 * h * (u0 + u1) - h * h / 12.0 * (d1 - d0);
            B[i - 1] = w * B[i] - qi;
        }
        for (int i = 0; i < j0; ++i) out.v[i] = -rho[i] * B[i];
    } else {
        std::vector<double> K(static_cast<size_t>(j0) + 1, 0.0);
        for (int i = j0; i >= 1; --i) {
            const double w = std::exp(P[i] - P[i - 1]);
            const double u0 = Hg.v[i - 1];
            const double u1 = w * Hg.v[i];
            const double d0 = rho[i - 1] * Hg.v[i - 1] + Hgp.v[i - 1];
            const double d1 = w * (rho[i] * Hg.v[i] + Hgp.v[i]);
            const double qi = 0.5 * h * (u0 + u1) - h * h / 12.0 * (d1 - d0);
            K[i - 1] = w * K[i] - qi;
        }
        for (int i = 0; i < j0; ++i) out.v[i] = rho[i] * K[i] - Hg.v[i];
    }
    return out;
}

}  // namespace

GridFunction op_T(const GridFunction& f, const SolverConfig& cfg) {
    validate(cfg);
    const WaveTables t = wave_tables(cfg, f.L, f.n);
    const GridFunction r10s = op_R1(t.sigma_g, 0.0, cfg);
    const GridFunction arg = gf_add(gf_mul(r10s, f),
                                    gf_mul(dr10_two_term(t.sigma_g, f, cfg),
                                           t.sigma_g));
    return gf_sub(f, apply_multiplier(arg, 0.0, cfg));
}

GridFunction op_S(const GridFunction& g, const SolverConfig& cfg) {
    validate(cfg);
    return op_S_impl(g, cfg, wave_tables(cfg, g.L, g.n));
}

FixedPointResult picard_solve(const SolverConfig& cfg) {
    validate(cfg);
    const double nu = cfg.nu;
    const double snu = std::sqrt(nu);
    const double L = cfg.L > 0.0 ? cfg.L : auto_half_width(cfg);
    const int n = cfg.n;
    const double qrate = weight_rate(cfg);

    const WaveTables t = wave_tables(cfg, L, n);
    const GridFunction& sg = t.sigma_g;
    // discrete leading order: zeta and R1(sigma) evaluated with the same
    // quadrature as the iteration, so the nu=0 equations close exactly
    const GridFunction zg = op_P1(sg, 0.0, cfg);
    const GridFunction r10_sigma = op_R1(sg, 0.0, cfg);

    GridFunction eta1 = uniform_grid(L, n);
    GridFunction eta2 = uniform_grid(L, n);

    FixedPointResult res;
    res.sigma = sg;
    res.zeta = zg;

    bool converged = false;
    int done = 0;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const GridFunction psi1 = gf_add(sg, eta1);
        const GridFunction psi2 = gf_add(zg, eta2);

        const GridFunction r1nu = op_R1(psi1, nu, cfg);
        const GridFunction r10 = op_R1(psi1, 0.0, cfg);

        const GridFunction arg_nu = gf_mul(r1nu, psi1);
        const GridFunction v11 = gf_sub(apply_multiplier(arg_nu, nu, cfg),
                                        apply_multiplier(arg_nu, 0.0, cfg));
        const GridFunction v12 =
            apply_multiplier(gf_mul(gf_sub(r1nu, r10), psi1), 0.0, cfg);
        const GridFunction dr = dr10_two_term(sg, eta1, cfg);
        const GridFunction v13 = apply_multiplier(
            gf_mul(gf_sub(gf_sub(r10, r10_sigma), dr), sg), 0.0, cfg);
        const GridFunction v14 =
            apply_multiplier(gf_mul(gf_sub(r10, r10_sigma), eta1), 0.0, cfg);
        const GridFunction v15 =
            gf_scale(apply_multiplier(op_N(psi1, psi2, nu, cfg), nu, cfg), snu);

        const GridFunction vsum =
            gf_add(gf_add(gf_add(v11, v12), gf_add(v13, v14)), v15);
        const GridFunction eta1_new = op_S_impl(vsum, cfg, t);

        const GridFunction v21 =
            gf_sub(op_P1(psi1, nu, cfg), op_P1(psi1, 0.0, cfg));
        const GridFunction v22 = op_P1(eta1_new, 0.0, cfg);
        const GridFunction v23 = gf_scale(op_P2(psi1, psi2, nu, cfg), nu);
        const GridFunction eta2_new = gf_add(gf_add(v21, v22), v23);

        GridFunction next1 = eta1;
        GridFunction next2 = eta2;
        for (int i = 0; i < n; ++i) {
            next1.v[i] += cfg.damping * (eta1_new.v[i] - eta1.v[i]);
            next2.v[i] += cfg.damping * (eta2_new.v[i] - eta2.v[i]);
        }
        const double delta = h1q_norm(gf_sub(next1, eta1), qrate) +
                             w1inf_norm(gf_sub(next2, eta2));
        eta1 = std::move(next1);
        eta2 = std::move(next2);
        res.deltas.push_back(delta);
        done = it;
        if (delta < cfg.picard_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "fixed point not reached: update norm %.3e after %d "
                      "iterations (tol %.1e)",
                      res.deltas.back(), done, cfg.picard_tol);
        throw NoConvergence(buf);
    }

    res.iterations = done;
    res.eta1 = eta1;
    res.eta2 = eta2;
    res.psi1 = gf_add(sg, eta1);
    res.psi2 = gf_add(zg, eta2);

    // defects of the two wave-frame profile equations at the converged pair
    const GridFunction rhs1 = apply_multiplier(
        gf_add(gf_mul(op_R1(res.psi1, nu, cfg), res.psi1),
               gf_scale(op_N(res.psi1, res.psi2, nu, cfg), snu)),
        nu, cfg);
    const GridFunction def1 = gf_sub(res.psi1, rhs1);
    const GridFunction rhs2 =
        gf_add(op_P1(res.psi1, nu, cfg),
               gf_scale(op_P2(res.psi1, res.psi2, nu, cfg), nu));
    const GridFunction def2 = gf_sub(res.psi2, rhs2);
    res.residual1 = sup_norm(def1) / std::max(sup_norm(res.psi1), 1e-300);
    res.residual2 = sup_norm(def2) / std::max(sup_norm(res.psi2), 1e-300);
    res.eta_norm = h1q_norm(eta1, qrate) + w1inf_norm(eta2);
    return res;
}

std::vector<SymbolGap> symbol_convergence_table(const std::vector<double>& nus,
                                                const SolverConfig& cfg,
                                                double k_max, int n_k) {
    validate(cfg);
    if (nus.empty()) throw ValidationError("symbol table needs at least one nu");
    if (!(k_max > 0.0) || n_k < 2)
        throw ValidationError("symbol table needs k_max > 0 and n_k >= 2");
    std::vector<SymbolGap> out;
    for (double nu : nus) {
        if (!(nu > 0.0)) throw ValidationError("symbol table nus must be > 0");
        double sup = 0.0;
        for (int i = 0; i < n_k; ++i) {
            const double k = k_max * i / (n_k - 1);
            sup = std::max(sup, std::abs(multiplier_symbol(k, nu, cfg) -
                                         multiplier_symbol(k, 0.0, cfg)));
        }
        out.push_back({nu, sup, sup / std::cbrt(nu)});
    }
    return out;
}

}  // namespace auxinwave
