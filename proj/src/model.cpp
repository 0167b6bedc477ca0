#include "auxinwave/model.hpp"

#include <cmath>
#include <string>

#include "auxinwave/errors.hpp"

namespace auxinwave {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw ValidationError(std::string(name) + " must be strictly positive, got " +
                              std::to_string(v));
    }
}

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0)) {
        throw ValidationError(std::string(name) + " must be nonnegative, got " +
                              std::to_string(v));
    }
}

// Guard a rational-function denominator. A vanishing denominator means the
// state crossed a pole of the kinetics, which is unphysical: fail hard.
void check_pole(double denom, const char* what) {
    if (denom == 0.0 || !std::isfinite(denom)) {
        throw DomainError(std::string("pole crossed in ") + what);
    }
}

}  // namespace

void validate(const ModelParams& p) {
    require_positive(p.T_act, "T_act");
    require_positive(p.T_diff, "T_diff");
    require_positive(p.k_a, "k_a");
    require_positive(p.k_r, "k_r");
    require_positive(p.k_m, "k_m");
    require_positive(p.k_1, "k_1");
    require_positive(p.alpha, "alpha");
    require_nonnegative(p.delta, "delta");
    require_nonnegative(p.k_2, "k_2");
}

DerivedConstants derived_constants(const ModelParams& p) {
    validate(p);
    DerivedConstants dc;
    dc.kappa = p.k_1 / (p.k_r * p.k_m);
    dc.tau1 = p.T_act / p.k_a;
    dc.tau2 = p.T_diff;
    const double base = 9.0 * p.alpha * dc.kappa * dc.tau1 * dc.tau2 * dc.tau2 / 8.0;
    dc.c_star = std::pow(base, 0.2);
    dc.hP_star = std::sqrt(6.0 * p.alpha / (dc.kappa * dc.tau1)) * std::pow(base, 0.1);
    dc.hR_star = 3.0 / dc.tau1 * std::pow(base, 0.2);
    return dc;
}

WaveScaling wave_scaling(double epsilon, double c0, double theta) {
    if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be nonnegative");
    if (!(c0 > 0.0)) throw ValidationError("c0 must be strictly positive");
    WaveScaling ws;
    ws.epsilon = epsilon;
    ws.nu = std::pow(epsilon, 0.4);
    ws.c0 = c0;
    ws.theta = theta;
    return ws;
}

double q1(double x, double y, const ModelParams& p) {
    const double denom = p.k_a + x;
    check_pole(denom, "q1 (k_a + x)");
    return x * x * y / denom;
}

double q2(double x, double y, const ModelParams& p) {
    const double denom = (p.k_r + x) * (p.k_m + y);
    check_pole(denom, "q2 ((k_r+x)(k_m+y))");
    const double kappa = p.k_1 / (p.k_r * p.k_m);
    return kappa * ((p.k_r * y + p.k_m * x + x * y) / denom) * x * y;
}

double nl1_nu(double X, double Y, double nu, const ModelParams& p) {
    if (!(nu >= 0.0)) throw ValidationError("nl1_nu: nu must be nonnegative");
    const double nu52 = std::pow(nu, 2.5);
    const double denom = p.k_a * (p.k_a + nu52 * X);
    check_pole(denom, "nl1_nu (k_a*(k_a + nu^{5/2} X))");
    return X * X * Y / denom;
}

double nl2_nu(double X, double Y, double nu, const ModelParams& p) {
    if (!(nu >= 0.0)) throw ValidationError("nl2_nu: nu must be nonnegative");
    const double nu12 = std::sqrt(nu);
    const double nu52 = std::pow(nu, 2.5);
    const double denom = (p.k_r + nu52 * X) * (p.k_m + nu12 * Y);
    check_pole(denom, "nl2_nu ((k_r + nu^{5/2} X)(k_m + nu^{1/2} Y))");
    const double kappa = p.k_1 / (p.k_r * p.k_m);
    return kappa * (p.k_r * Y + p.k_m * nu * nu * X + nu52 * X * Y) / denom * X * Y;
}

}  // namespace auxinwave
