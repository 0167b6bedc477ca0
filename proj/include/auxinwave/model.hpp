#pragma once

#include <cmath>

namespace auxinwave {

// Parameters of the auxin / PIN1 lattice model. Units are abstract
// (cell size and baseline rates normalized to 1).
struct ModelParams {
    double T_act = 800.0;   // active rightward transport strength (1/time)
    double T_diff = 0.15;   // diffusive transport strength (1/time)
    double k_a = 1.0;       // Michaelis constant, auxin transport (concentration)
    double k_r = 100.0;     // Michaelis constant, polarization vs. neighbour auxin
    double k_m = 100.0;     // Michaelis constant, polarization vs. unpolarized pool
    double k_1 = 200.0;     // polarization rate (concentration/time)
    double alpha = 0.1;     // PIN1 production rate (1/time)
    double delta = 0.0;     // PIN1 decay rate; 0 recovers the core system
    double k_2 = 0.0;       // depolarization rate; 0 recovers the core system
};

// Throws ValidationError if a strictly-positive parameter is not, or if
// delta/k_2 are negative.
void validate(const ModelParams& p);

// Constants derived from the model parameters: the compressed rates
// kappa = k1/(kr*km), tau1 = T_act/k_a, tau2 = T_diff, and the leading-order
// travelling-pulse prefactors
//   c_star  = (9*alpha*kappa*tau1*tau2^2/8)^(1/5)
//   hP_star = sqrt(6*alpha/(kappa*tau1)) * (9*alpha*kappa*tau1*tau2^2/8)^(1/10)
//   hR_star = (3/tau1) * (9*alpha*kappa*tau1*tau2^2/8)^(1/5)
// relating pulse height hA to speed ~ c_star*hA^(2/5), width ~ w_star*hA^(-2/5),
// PIN heights ~ hP_star*hA^(1/5) and hR_star*hA^(2/5).
struct DerivedConstants {
    double kappa = 0.0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    double c_star = 0.0;
    double hP_star = 0.0;
    double hR_star = 0.0;
};

DerivedConstants derived_constants(const ModelParams& p);

// Long-wave scaling bookkeeping: a pulse of amplitude epsilon has scaled
// profiles living on the compressed coordinate X = nu * x with nu = epsilon^(2/5).
struct WaveScaling {
    double epsilon = 0.0;
    double nu = 0.0;      // nu = epsilon^(2/5)
    double c0 = 0.0;      // speed coefficient (default c_star)
    double theta = 0.0;   // free phase shift of the closed-form profile
};

WaveScaling wave_scaling(double epsilon, double c0, double theta = 0.0);

// Pointwise nonlinearities shared by the simulator and the long-wave solver.
// Kept as literal rational expressions; algebraic simplifications live in tests.

// q1(x,y) = x^2 * y / (k_a + x)
double q1(double x, double y, const ModelParams& p);

// q2(x,y) = kappa * ((k_r*y + k_m*x + x*y) / ((k_r+x)*(k_m+y))) * x * y
double q2(double x, double y, const ModelParams& p);

// Scaled remainder nonlinearities on the long-wave variables:
//   nl1_nu(X,Y) = X^2*Y / (k_a*(k_a + nu^(5/2)*X))
//   nl2_nu(X,Y) = kappa*(k_r*Y + k_m*nu^2*X + nu^(5/2)*X*Y)
//                 / ((k_r + nu^(5/2)*X)*(k_m + nu^(1/2)*Y)) * X*Y
double nl1_nu(double X, double Y, double nu, const ModelParams& p);
double nl2_nu(double X, double Y, double nu, const ModelParams& p);

}  // namespace auxinwave
