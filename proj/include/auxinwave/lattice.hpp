#pragma once

#include <variant>
#include <vector>

#include "auxinwave/model.hpp"

namespace auxinwave {

// State of a row of N cells at time t.  Arrays are 0-based internally;
// cell coordinates reported to callers are 1-based (j = 1..N), matching the
// convention used in output files.
struct LatticeState {
    double t = 0.0;
    std::vector<double> A;  // auxin
    std::vector<double> P;  // unpolarized carrier pool
    std::vector<double> R;  // right-face polarized carriers

    int size() const { return static_cast<int>(A.size()); }
};

// Edge handling for the row.
//
// ClosedRow: left ghost carries A_0 = A_1 with no polarized carriers
// (R_0 = 0), so nothing is actively pumped into cell 1 and diffusion sees a
// reflecting wall; the right ghost is an absorbing empty cell (A_{N+1} = 0).
struct ClosedRow {};
// Same edges as ClosedRow plus a constant auxin source added to dA_1/dt.
struct InfluxLeft {
    double rate = 0.0;
};
// Wrap-around indexing; useful for conservation checks.
struct Periodic {};

using BoundaryCondition = std::variant<ClosedRow, InfluxLeft, Periodic>;

// Time derivative of the state under the transport model:
//   dA_j/dt = T_act [ R_{j-1} A_{j-1}/(k_a+A_{j-1}) - R_j A_j/(k_a+A_j) ]
//             + T_diff (A_{j+1} - 2 A_j + A_{j-1})
//   dP_j/dt = -k_1 A_{j+1}/(k_r+A_{j+1}) * P_j/(k_m+P_j) + alpha A_j
//             + k_2 R_j - delta P_j
//   dR_j/dt =  k_1 A_{j+1}/(k_r+A_{j+1}) * P_j/(k_m+P_j) - k_2 R_j
void rhs(const LatticeState& s, const ModelParams& p, const BoundaryCondition& bc,
         LatticeState& out);

// Largest stable explicit step suggested by the initial data:
//   0.2 / (T_act * max_j R_j / k_a + 4 T_diff + k_1/k_m + alpha).
double default_dt(const ModelParams& p, const LatticeState& initial);

// Sampled trajectory.  Snapshot times are uniformly spaced (dt * sample_every)
// and include the initial and final states.
struct Trajectory {
    std::vector<LatticeState> snapshots;
    double dt = 0.0;
    int sample_every = 1;
    ModelParams params;
    BoundaryCondition bc;

    double sample_dt() const { return dt * sample_every; }
};

struct IntegrateOptions {
    double blow_up_bound = 1e6;  // any |field| above this aborts the run
};

// Classic fixed-step RK4 from s0.t to at least t_end (the horizon is rounded
// up to a whole number of sampling intervals so snapshots stay uniform).
// Throws InstabilityDetected when a field exceeds blow_up_bound or turns
// non-finite.
Trajectory integrate(const LatticeState& s0, const ModelParams& p,
                     const BoundaryCondition& bc, double t_end, double dt,
                     int sample_every, const IntegrateOptions& opt = {});

// All-zero state of N cells with one loaded cell: A_1 = a_init.
LatticeState pulse_initial_state(int N, double a_init);

// Zero initial data driven by a constant left-edge influx.
Trajectory run_wavetrain(const ModelParams& p, double influx_rate, int N,
                         double t_end, double dt, int sample_every,
                         const IntegrateOptions& opt = {});

}  // namespace auxinwave
