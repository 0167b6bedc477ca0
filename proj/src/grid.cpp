#include "auxinwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "auxinwave/errors.hpp"

namespace auxinwave {

namespace {

void check_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.n != b.n || a.L != b.L)
        throw ValidationError("grid mismatch between operands");
}

}  // namespace

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridFunction uniform_grid(double L, int n) {
    if (!(L > 0.0) || !std::isfinite(L))
        throw ValidationError("grid half-length L must be positive and finite");
    if (n < 256 || !is_power_of_two(n))
        throw ValidationError("grid size n must be a power of two >= 256");
    GridFunction f;
    f.L = L;
    f.n = n;
    f.v.assign(static_cast<size_t>(n), 0.0);
    return f;
}

GridFunction tabulate(double L, int n, const std::function<double(double)>& f) {
    GridFunction g = uniform_grid(L, n);
    for (int i = 0; i < n; ++i) g.v[i] = f(g.x(i));
    return g;
}

double sample(const GridFunction& f, double X) {
    const double h = f.h();
    const double s = (X + f.L) / h;
    if (s <= -1.0 || s >= f.n) return 0.0;
    if (s < 0.0) {
        // between the implicit zero at -L-h and the first node
        return (s + 1.0) * f.v[0];
    }
    const int i = static_cast<int>(std::floor(s));
    const double w = s - i;
    const double right = (i + 1 < f.n) ? f.v[i + 1] : 0.0;  // zero beyond last node
    return (1.0 - w) * f.v[i] + w * right;
}

GridFunction shifted(const GridFunction& f, double s) {
    if (s == 0.0) return f;
    GridFunction g = f;
    for (int i = 0; i < f.n; ++i) g.v[i] = sample(f, f.x(i) + s);
    return g;
}

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (double y : f.v) m = std::max(m, std::fabs(y));
    return m;
}

double l2_norm(const GridFunction& f) {
    double s = 0.0;
    for (double y : f.v) s += y * y;
    return std::sqrt(f.h() * s);
}

double integral(const GridFunction& f) {
    double s = 0.5 * (f.v.front() + f.v.back());
    for (int i = 1; i + 1 < f.n; ++i) s += f.v[i];
    return f.h() * s;
}

GridFunction derivative(const GridFunction& f) {
    const int n = f.n;
    const double h = f.h();
    GridFunction d = f;
    if (n < 5) throw ValidationError("derivative needs at least 5 samples");
    d.v[0] = (-3.0 * f.v[0] + 4.0 * f.v[1] - f.v[2]) / (2.0 * h);
    d.v[1] = (f.v[2] - f.v[0]) / (2.0 * h);
    for (int i = 2; i + 2 < n; ++i)
        d.v[i] = (-f.v[i + 2] + 8.0 * f.v[i + 1] - 8.0 * f.v[i - 1] + f.v[i - 2]) / (12.0 * h);
    d.v[n - 2] = (f.v[n - 1] - f.v[n - 3]) / (2.0 * h);
    d.v[n - 1] = (3.0 * f.v[n - 1] - 4.0 * f.v[n - 2] + f.v[n - 3]) / (2.0 * h);
    return d;
}

namespace {

// Low-order endpoint slopes for the Euler-Maclaurin correction term.
// Second-order accuracy suffices: the correction itself carries an h^2 factor.
std::vector<double> slope2(const GridFunction& f) {
    const int n = f.n;
    const double h = f.h();
    std::vector<double> d(static_cast<size_t>(n));
    d[0] = (-3.0 * f.v[0] + 4.0 * f.v[1] - f.v[2]) / (2.0 * h);
    for (int i = 1; i + 1 < n; ++i) d[i] = (f.v[i + 1] - f.v[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f.v[n - 1] - 4.0 * f.v[n - 2] + f.v[n - 3]) / (2.0 * h);
    return d;
}

}  // namespace

GridFunction cumulative_from_right(const GridFunction& f) {
    const int n = f.n;
    const double h = f.h();
    const std::vector<double> d = slope2(f);
    GridFunction F = f;
    F.v[n - 1] = 0.0;
    for (int i = n - 2; i >= 0; --i)
        F.v[i] = F.v[i + 1] + 0.5 * h * (f.v[i] + f.v[i + 1]);
    const double c = h * h / 12.0;
    for (int i = 0; i + 1 < n; ++i) F.v[i] -= c * (d[n - 1] - d[i]);
    return F;
}

GridFunction cumulative_from_left(const GridFunction& f) {
    const int n = f.n;
    const double h = f.h();
    const std::vector<double> d = slope2(f);
    GridFunction F = f;
    F.v[0] = 0.0;
    for (int i = 1; i < n; ++i)
        F.v[i] = F.v[i - 1] + 0.5 * h * (f.v[i - 1] + f.v[i]);
    const double c = h * h / 12.0;
    for (int i = 1; i < n; ++i) F.v[i] -= c * (d[i] - d[0]);
    return F;
}

double h1q_norm(const GridFunction& f, double q) {
    const GridFunction d = derivative(f);
    double s = 0.0;
    for (int i = 0; i < f.n; ++i) {
        const double w = std::exp(2.0 * q * std::fabs(f.x(i)));
        s += w * (f.v[i] * f.v[i] + d.v[i] * d.v[i]);
    }
    return std::sqrt(f.h() * s);
}

double w1inf_norm(const GridFunction& f) {
    return sup_norm(f) + sup_norm(derivative(f));
}

void require_decaying(const GridFunction& f, double tail_tol, const char* what) {
    const double m = sup_norm(f);
    if (m == 0.0) return;
    const double edge = std::max(std::fabs(f.v.front()), std::fabs(f.v.back()));
    if (edge > tail_tol * m) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "%s: edge magnitude %.3e exceeds %.1e * sup %.3e; "
                      "enlarge L or loosen tail_tol",
                      what, edge, tail_tol, m);
        throw TailTooFat(buf);
    }
}

GridFunction gf_add(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    GridFunction r = a;
    for (int i = 0; i < a.n; ++i) r.v[i] += b.v[i];
    return r;
}

GridFunction gf_sub(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    GridFunction r = a;
    for (int i = 0; i < a.n; ++i) r.v[i] -= b.v[i];
    return r;
}

GridFunction gf_mul(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    GridFunction r = a;
    for (int i = 0; i < a.n; ++i) r.v[i] *= b.v[i];
    return r;
}

GridFunction gf_scale(const GridFunction& a, double s) {
    GridFunction r = a;
    for (double& y : r.v) y *= s;
    return r;
}

}  // namespace auxinwave
