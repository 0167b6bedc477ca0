#pragma once

#include "auxinwave/model.hpp"

namespace auxinwave {

// Closed-form leading-order travelling-pulse profiles in the wave frame.
// With u = 2 c0 X / tau2 + theta, A- = alpha*kappa*tau1, B- = 6 c0^2:
//
//   Sigma(X)    = sqrt( 6 c0^3 / (A- + B- e^u) )          (cumulative auxin ahead)
//   sigma(X)    = -Sigma'(X)
//               = (6 c0^3)^{3/2} e^u / ( tau2 (A- + B- e^u)^{3/2} )
//   zeta(X)     = (alpha / c0) Sigma(X)
//   phi_A = sigma,  phi_P = zeta,
//   phi_R(X)    = 3 alpha kappa c0 / (A- + B- e^u)
//
// sigma is normalized so that its supremum equals 1 exactly at c0 = c_star.
struct ProfileContext {
    ModelParams params;
    DerivedConstants dc;
    double c0 = 0.0;
    double theta = 0.0;
    double A_minus = 0.0;  // alpha*kappa*tau1
    double B_minus = 0.0;  // 6 c0^2
    double r = 0.0;        // c0 / tau2 (exponential decay rate of sigma)
};

ProfileContext make_profile_context(const ModelParams& p, double c0,
                                    double theta = 0.0);

double big_sigma(const ProfileContext& ctx, double X);
double sigma(const ProfileContext& ctx, double X);
double sigma_prime(const ProfileContext& ctx, double X);
double zeta(const ProfileContext& ctx, double X);

double phi_A(const ProfileContext& ctx, double X);  // == sigma
double phi_P(const ProfileContext& ctx, double X);  // == zeta
double phi_R(const ProfileContext& ctx, double X);

// Location of the sigma maximum (where e^u = 2 A- / B-) and its value.
double peak_location(const ProfileContext& ctx);
double sup_sigma(const ProfileContext& ctx);

// Full width of sigma at threshold * sup_sigma (0 < threshold < 1), found by
// bracketing + bisection on each flank.  Throws NoBracket when the level is
// never crossed.
double w_star(const ProfileContext& ctx, double threshold);

}  // namespace auxinwave
