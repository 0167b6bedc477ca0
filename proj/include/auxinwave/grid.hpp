#pragma once

#include <functional>
#include <vector>

namespace auxinwave {

// Uniform samples of a function on the truncated line [-L, L):
//   X_i = -L + i*(2L/n),  i = 0..n-1.
// n is a power of two so the same grid feeds the FFT-based multiplier.
// Functions declared "decaying" must have negligible edge values (checked
// against tail_tol wherever an operator relies on zero-extension).
struct GridFunction {
    double L = 0.0;
    int n = 0;
    std::vector<double> v;

    double h() const { return 2.0 * L / n; }
    double x(int i) const { return -L + i * h(); }
};

bool is_power_of_two(int n);

// Zero-initialized grid function; throws ValidationError on bad L or n.
GridFunction uniform_grid(double L, int n);

// Tabulate a callable on the grid nodes.
GridFunction tabulate(double L, int n, const std::function<double(double)>& f);

// Linear interpolation; zero outside the sampled range (decaying convention).
double sample(const GridFunction& f, double X);

// g(X) = f(X + s) by linear interpolation (exact copy when s == 0).
GridFunction shifted(const GridFunction& f, double s);

double sup_norm(const GridFunction& f);
double l2_norm(const GridFunction& f);

// Trapezoid integral over the whole grid.
double integral(const GridFunction& f);

// Centered finite-difference derivative (4th order inside, one-sided edges).
GridFunction derivative(const GridFunction& f);

// Cumulative integrals with Euler-Maclaurin endpoint correction
// (trapezoid minus h^2/12 * (f'(end) - f'(start)); O(h^4) on smooth data).
// cumulative_from_right(f)[i] = integral of f over [X_i, X_{n-1}]
// cumulative_from_left(f)[i]  = integral of f over [X_0, X_i]
GridFunction cumulative_from_right(const GridFunction& f);
GridFunction cumulative_from_left(const GridFunction& f);

// Discrete exponentially-weighted Sobolev norm:
//   sqrt( h * sum_i e^{2q|X_i|} (f_i^2 + f'_i^2) ).
double h1q_norm(const GridFunction& f, double q);

// sup|f| + sup|f'|.
double w1inf_norm(const GridFunction& f);

// Throws TailTooFat when either edge magnitude exceeds tail_tol * sup|f|.
void require_decaying(const GridFunction& f, double tail_tol, const char* what);

// Elementwise helpers (all arguments must share the grid).
GridFunction gf_add(const GridFunction& a, const GridFunction& b);
GridFunction gf_sub(const GridFunction& a, const GridFunction& b);
GridFunction gf_mul(const GridFunction& a, const GridFunction& b);
GridFunction gf_scale(const GridFunction& a, double s);

}  // namespace auxinwave
