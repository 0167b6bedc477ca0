#include "auxinwave/profiles.hpp"

#include <cmath>
#include <cstdio>

#include "auxinwave/errors.hpp"

namespace auxinwave {

namespace {

double u_of(const ProfileContext& ctx, double X) {
    return 2.0 * ctx.c0 * X / ctx.params.T_diff + ctx.theta;
}

// log(A- + B- e^u), safe for any u
double log_denom(const ProfileContext& ctx, double u) {
    if (u > 30.0)
        return std::log(ctx.B_minus) + u + std::log1p(ctx.A_minus / ctx.B_minus * std::exp(-u));
    return std::log(ctx.A_minus + ctx.B_minus * std::exp(u));
}

// B- e^u / (A- + B- e^u) in (0,1), safe for any u
double s_frac(const ProfileContext& ctx, double u) {
    return std::exp(std::log(ctx.B_minus) + u - log_denom(ctx, u));
}

}  // namespace

ProfileContext make_profile_context(const ModelParams& p, double c0, double theta) {
    validate(p);
    if (!(c0 > 0.0) || !std::isfinite(c0))
        throw ValidationError("profile speed c0 must be positive and finite");
    if (!std::isfinite(theta))
        throw ValidationError("profile offset theta must be finite");
    ProfileContext ctx;
    ctx.params = p;
    ctx.dc = derived_constants(p);
    ctx.c0 = c0;
    ctx.theta = theta;
    ctx.A_minus = p.alpha * ctx.dc.kappa * ctx.dc.tau1;
    ctx.B_minus = 6.0 * c0 * c0;
    ctx.r = c0 / ctx.dc.tau2;
    return ctx;
}

double big_sigma(const ProfileContext& ctx, double X) {
    const double u = u_of(ctx, X);
    const double log_num = std::log(6.0 * ctx.c0 * ctx.c0 * ctx.c0);
    return std::exp(0.5 * log_num - 0.5 * log_denom(ctx, u));
}

double sigma(const ProfileContext& ctx, double X) {
    const double u = u_of(ctx, X);
    const double log_num = std::log(6.0 * ctx.c0 * ctx.c0 * ctx.c0);
    return std::exp(1.5 * log_num - std::log(ctx.dc.tau2) + u - 1.5 * log_denom(ctx, u));
}

double sigma_prime(const ProfileContext& ctx, double X) {
    const double u = u_of(ctx, X);
    const double s = s_frac(ctx, u);
    return sigma(ctx, X) * ctx.r * (2.0 - 3.0 * s);
}

double zeta(const ProfileContext& ctx, double X) {
    return ctx.params.alpha / ctx.c0 * big_sigma(ctx, X);
}

double phi_A(const ProfileContext& ctx, double X) { return sigma(ctx, X); }

double phi_P(const ProfileContext& ctx, double X) { return zeta(ctx, X); }

double phi_R(const ProfileContext& ctx, double X) {
    const double u = u_of(ctx, X);
    const double log_num =
        std::log(3.0 * ctx.params.alpha * ctx.dc.kappa * ctx.c0);
    return std::exp(log_num - log_denom(ctx, u));
}

double peak_location(const ProfileContext& ctx) {
    const double u_star = std::log(2.0 * ctx.A_minus / ctx.B_minus);
    return (u_star - ctx.theta) * ctx.dc.tau2 / (2.0 * ctx.c0);
}

double sup_sigma(const ProfileContext& ctx) { return sigma(ctx, peak_location(ctx)); }

namespace {

// root of sigma(X) - level on one flank of the peak; direction = -1 (left) or +1
double flank_crossing(const ProfileContext& ctx, double level, double x_peak,
                      int direction) {
    double step = 1.0;
    double a = x_peak;
    double b = x_peak + direction * step;
    int tries = 0;
    while (sigma(ctx, b) > level) {
        step *= 2.0;
        b = x_peak + direction * step;
        if (++tries > 60) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "level %.6g never crossed on the %s flank", level,
                          direction < 0 ? "left" : "right");
            throw NoBracket(buf);
        }
    }
    // sigma is monotone on each flank; bisect [min(a,b), max(a,b)]
    double lo = std::min(a, b), hi = std::max(a, b);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::fabs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool above = sigma(ctx, mid) > level;
        // above the level means closer to the peak
        if ((direction < 0) == above)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double w_star(const ProfileContext& ctx, double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw NoBracket("width threshold must lie strictly between 0 and 1");
    const double x_peak = peak_location(ctx);
    const double level = threshold * sup_sigma(ctx);
    const double left = flank_crossing(ctx, level, x_peak, -1);
    const double right = flank_crossing(ctx, level, x_peak, +1);
    return right - left;
}

}  // namespace auxinwave
