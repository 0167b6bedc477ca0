#include "auxinwave/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "auxinwave/errors.hpp"

namespace auxinwave {

namespace {

enum class EdgeKind { Closed, Influx, Wrap };

struct EdgeInfo {
    EdgeKind kind = EdgeKind::Closed;
    double influx = 0.0;
};

EdgeInfo edge_info(const BoundaryCondition& bc) {
    EdgeInfo e;
    if (std::holds_alternative<Periodic>(bc)) {
        e.kind = EdgeKind::Wrap;
    } else if (const auto* in = std::get_if<InfluxLeft>(&bc)) {
        e.kind = EdgeKind::Influx;
        e.influx = in->rate;
    }
    return e;
}

void check_sizes(const LatticeState& s) {
    const size_t n = s.A.size();
    if (n < 3) throw ValidationError("lattice needs at least 3 cells");
    if (s.P.size() != n || s.R.size() != n)
        throw ValidationError("lattice state arrays have mismatched lengths");
}

}  // namespace

void rhs(const LatticeState& s, const ModelParams& p, const BoundaryCondition& bc,
         LatticeState& out) {
    check_sizes(s);
    const int n = s.size();
    out.t = s.t;
    out.A.resize(n);
    out.P.resize(n);
    out.R.resize(n);

    const EdgeInfo edge = edge_info(bc);
    const bool wrap = edge.kind == EdgeKind::Wrap;

    // Rightward active flux out of cell j: T_act * R_j * A_j / (k_a + A_j).
    auto flux = [&](double a, double r) { return p.T_act * r * a / (p.k_a + a); };

    for (int j = 0; j < n; ++j) {
        double a_left, r_left, a_right;
        if (wrap) {
            a_left = s.A[(j + n - 1) % n];
            r_left = s.R[(j + n - 1) % n];
            a_right = s.A[(j + 1) % n];
        } else {
            // left ghost mirrors A and carries no polarized transporters;
            // right ghost is an empty absorbing cell
            a_left = (j == 0) ? s.A[0] : s.A[j - 1];
            r_left = (j == 0) ? 0.0 : s.R[j - 1];
            a_right = (j == n - 1) ? 0.0 : s.A[j + 1];
        }

        const double adot = flux(a_left, r_left) - flux(s.A[j], s.R[j]) +
                            p.T_diff * (a_right - 2.0 * s.A[j] + a_left);
        // polarization recruitment driven by the right neighbour's auxin
        const double pol =
            p.k_1 * (a_right / (p.k_r + a_right)) * (s.P[j] / (p.k_m + s.P[j]));

        out.A[j] = adot;
        out.P[j] = -pol + p.alpha * s.A[j] + p.k_2 * s.R[j] - p.delta * s.P[j];
        out.R[j] = pol - p.k_2 * s.R[j];
    }
    if (edge.kind == EdgeKind::Influx) out.A[0] += edge.influx;
}

double default_dt(const ModelParams& p, const LatticeState& initial) {
    check_sizes(initial);
    double rmax = 0.0;
    for (double r : initial.R) rmax = std::max(rmax, r);
    const double rate =
        p.T_act * rmax / p.k_a + 4.0 * p.T_diff + p.k_1 / p.k_m + p.alpha;
    return 0.2 / rate;
}

namespace {

void axpy(LatticeState& y, double a, const LatticeState& x) {
    const int n = y.size();
    for (int j = 0; j < n; ++j) {
        y.A[j] += a * x.A[j];
        y.P[j] += a * x.P[j];
        y.R[j] += a * x.R[j];
    }
}

void check_finite(const LatticeState& s, double bound) {
    for (int j = 0; j < s.size(); ++j) {
        const double m = std::max({std::fabs(s.A[j]), std::fabs(s.P[j]), std::fabs(s.R[j])});
        if (!(m <= bound)) {  // catches NaN as well
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "field magnitude exceeded %.3g at t=%.6g, cell %d",
                          bound, s.t, j + 1);
            throw InstabilityDetected(buf);
        }
    }
}

}  // namespace

Trajectory integrate(const LatticeState& s0, const ModelParams& p,
                     const BoundaryCondition& bc, double t_end, double dt,
                     int sample_every, const IntegrateOptions& opt) {
    validate(p);
    check_sizes(s0);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
    if (sample_every < 1) throw ValidationError("sample_every must be >= 1");
    if (!(t_end > s0.t)) throw ValidationError("t_end must exceed the initial time");

    // Round the horizon up to a whole number of sampling intervals so the
    // snapshot times stay uniform and include the final state.
    const double span = t_end - s0.t;
    long long blocks = static_cast<long long>(std::ceil(span / (dt * sample_every) - 1e-9));
    if (blocks < 1) blocks = 1;
    const long long n_steps = blocks * sample_every;

    Trajectory traj;
    traj.dt = dt;
    traj.sample_every = sample_every;
    traj.params = p;
    traj.bc = bc;
    traj.snapshots.reserve(static_cast<size_t>(blocks) + 1);

    LatticeState y = s0;
    LatticeState k1, k2, k3, k4, tmp;
    traj.snapshots.push_back(y);

    for (long long step = 1; step <= n_steps; ++step) {
        rhs(y, p, bc, k1);
        tmp = y;
        axpy(tmp, 0.5 * dt, k1);
        tmp.t = y.t + 0.5 * dt;
        rhs(tmp, p, bc, k2);
        tmp = y;
        axpy(tmp, 0.5 * dt, k2);
        tmp.t = y.t + 0.5 * dt;
        rhs(tmp, p, bc, k3);
        tmp = y;
        axpy(tmp, dt, k3);
        tmp.t = y.t + dt;
        rhs(tmp, p, bc, k4);

        axpy(y, dt / 6.0, k1);
        axpy(y, dt / 3.0, k2);
        axpy(y, dt / 3.0, k3);
        axpy(y, dt / 6.0, k4);
        y.t = s0.t + step * dt;

        check_finite(y, opt.blow_up_bound);
        if (step % sample_every == 0) traj.snapshots.push_back(y);
    }
    return traj;
}

LatticeState pulse_initial_state(int N, double a_init) {
    if (N < 3) throw ValidationError("lattice needs at least 3 cells");
    if (!(a_init >= 0.0)) throw ValidationError("initial auxin load must be >= 0");
    LatticeState s;
    s.t = 0.0;
    s.A.assign(static_cast<size_t>(N), 0.0);
    s.P.assign(static_cast<size_t>(N), 0.0);
    s.R.assign(static_cast<size_t>(N), 0.0);
    s.A[0] = a_init;
    return s;
}

Trajectory run_wavetrain(const ModelParams& p, double influx_rate, int N,
                         double t_end, double dt, int sample_every,
                         const IntegrateOptions& opt) {
    if (!(influx_rate >= 0.0)) throw ValidationError("influx rate must be nonnegative");
    LatticeState s0 = pulse_initial_state(N, 0.0);
    return integrate(s0, p, InfluxLeft{influx_rate}, t_end, dt, sample_every, opt);
}

}  // namespace auxinwave
