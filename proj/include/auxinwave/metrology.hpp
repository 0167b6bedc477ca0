#pragma once

#include <functional>
#include <vector>

#include "auxinwave/grid.hpp"
#include "auxinwave/lattice.hpp"

namespace auxinwave {

// Cells this close to either end of the row are excluded from measurements
// (pulse formation and absorption transients).
int guard_band(int N);  // max(30, N/10)

// Sub-cell peak location (1-based cell coordinate) by parabolic interpolation
// through the maximum A sample and its two neighbours.
struct PeakSample {
    double t = 0.0;
    double x = 0.0;       // fractional cell coordinate
    double height = 0.0;  // interpolated peak value
};

// One PeakSample per snapshot whose refined peak lies strictly inside
// [guard+1, N-guard].  Throws NoPulse when fewer than min_count qualify.
std::vector<PeakSample> track_peak(const Trajectory& traj, int min_count = 10);

struct WaveMeasurement {
    double speed = 0.0;  // cells per unit time, least-squares slope of x(t)
    double width = 0.0;  // cells: full width of A at width_threshold * peak
    double hA = 0.0;     // sup over tracked window of interpolated A peak
    double hP = 0.0;     // sup of P over tracked window and interior cells
    double hR = 0.0;     // sup of R over tracked window and interior cells
    LatticeState profile;  // central tracked snapshot (for rescaling)
    double peak_x = 0.0;   // refined peak position within `profile`
    double t_begin = 0.0, t_end = 0.0;  // tracked window
    int guard = 0;
};

// Measures speed, width, and component heights from a pulse trajectory.
// Throws NoPulse (no tracked window) or WidthUndefined (threshold level not
// crossed on both flanks inside the row).
WaveMeasurement measure(const Trajectory& traj, double width_threshold = 0.05);

// Least-squares fit of y ~ exp(log_prefactor) * x^exponent in log-log space.
struct ScalingFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double rms_residual = 0.0;  // in log space
    int n_points = 0;
};

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

// Simulation defaults for single-pulse runs; zeros mean "choose automatically"
// (dt from the stability bound, horizon from the predicted wave speed,
// sampling so a run yields a few hundred snapshots).
struct SimOptions {
    int N = 500;
    double dt = 0.0;
    double t_end = 0.0;
    int sample_every = 0;
    double width_threshold = 0.05;
};

// Single cell loaded with a_init, integrated until the pulse has crossed the
// interior window.
Trajectory run_pulse(const ModelParams& p, double a_init, const SimOptions& opt = {});

struct SweepPoint {
    double a_init = 0.0;
    WaveMeasurement m;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    ScalingFit speed_fit;  // speed vs hA
    ScalingFit width_fit;  // width vs hA
    ScalingFit hP_fit;     // hP vs hA
    ScalingFit hR_fit;     // hR vs hA
};

// Runs one pulse per amplitude and fits the four power laws against hA.
SweepResult sweep_and_fit(const ModelParams& p, const std::vector<double>& a_list,
                          const SimOptions& opt = {});

// Wave-frame rescaling of a measured snapshot:
//   X = hA^{2/5} (j - peak_x); A, P, R divided by hA, hA^{1/5}, hA^{2/5}.
struct RescaledProfile {
    GridFunction A, P, R;
};

RescaledProfile rescale_profile(const WaveMeasurement& m, double x_half = 8.0,
                                int n = 1024);

// Translation fit: minimizes sup_i |f(X_i) - ref(X_i - s)| over s in
// [s_lo, s_hi] (coarse scan + golden-section refinement).
struct AlignResult {
    double shift = 0.0;
    double distance = 0.0;
};

double sup_distance(const GridFunction& f, const std::function<double(double)>& ref,
                    double s);
AlignResult align_to_reference(const GridFunction& f,
                               const std::function<double(double)>& ref,
                               double s_lo, double s_hi);

// Multi-pulse census of one snapshot sequence: local maxima of A above
// min_height, at least min_separation cells apart, away from the row ends.
struct PulseCensus {
    double t = 0.0;
    std::vector<double> x;       // refined positions, ascending
    std::vector<double> height;  // matching interpolated heights
};

std::vector<PulseCensus> census(const Trajectory& traj, double min_height,
                                int min_separation = 5);

int max_coexisting(const std::vector<PulseCensus>& seq);

// Merge events: two peaks of one census mapping onto a single nearby peak of
// the next (pulse absorption at the row ends is not counted).
int count_merges(const std::vector<PulseCensus>& seq, int N);

// For pairs of pulse tracks that coexist long enough, checks whether the
// taller pulse moves faster.  Only free, settled pulses are compared: both
// tracks must advance, hold steady heights over the shared window (its
// central stretch for long overlaps), stay outside the guard bands, and
// keep >= 25 cells apart (closer pairs are already interacting);
// near-equal heights are skipped as noise.
struct TallerFasterStats {
    int consistent = 0;
    int total = 0;
};

TallerFasterStats taller_faster(const std::vector<PulseCensus>& seq, int N);

}  // namespace auxinwave
