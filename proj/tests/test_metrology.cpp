#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "auxinwave/errors.hpp"
#include "auxinwave/lattice.hpp"
#include "auxinwave/metrology.hpp"
#include "auxinwave/model.hpp"
#include "auxinwave/profiles.hpp"

using namespace auxinwave;

namespace {

double gauss(double x, double w) { return std::exp(-(x / w) * (x / w)); }

// Synthetic trajectory: A_j(t) = h * gauss(j - x0 - c t), P and R scaled
// copies, sampled at uniform times.  Cell coordinates are 1-based.
Trajectory synthetic_pulse(int N, double x0, double c, double w, double h,
                           int n_snaps, double dt_snap) {
    Trajectory traj;
    traj.dt = dt_snap;
    traj.sample_every = 1;
    for (int k = 0; k < n_snaps; ++k) {
        LatticeState s;
        s.t = k * dt_snap;
        s.A.resize(N);
        s.P.resize(N);
        s.R.resize(N);
        const double xc = x0 + c * s.t;
        for (int j = 0; j < N; ++j) {
            const double d = (j + 1) - xc;
            s.A[j] = h * gauss(d, w);
            s.P[j] = 0.3 * h * gauss(d, w);
            s.R[j] = 0.2 * h * gauss(d - 2.0, w);
        }
        traj.snapshots.push_back(std::move(s));
    }
    return traj;
}

Trajectory single_snapshot(std::vector<double> A, double t = 0.0) {
    Trajectory traj;
    traj.dt = 1.0;
    traj.sample_every = 1;
    LatticeState s;
    s.t = t;
    s.P.assign(A.size(), 0.0);
    s.R.assign(A.size(), 0.0);
    s.A = std::move(A);
    traj.snapshots.push_back(std::move(s));
    return traj;
}

}  // namespace

TEST_CASE("guard band grows with the row but never below 30 cells") {
    CHECK(guard_band(500) == 50);
    CHECK(guard_band(100) == 30);
    CHECK(guard_band(301) == 30);
    CHECK(guard_band(1000) == 100);
}

TEST_CASE("peak tracking recovers a translating peak to sub-cell accuracy") {
    const double c = 0.37, x0 = 60.0;
    const Trajectory traj = synthetic_pulse(300, x0, c, 6.0, 1.0, 91, 2.0);
    const std::vector<PeakSample> track = track_peak(traj);
    REQUIRE(track.size() == 91);
    for (const PeakSample& s : track) {
        CHECK(std::fabs(s.x - (x0 + c * s.t)) < 0.02);
        CHECK(std::fabs(s.height - 1.0) < 0.005);
    }
}

TEST_CASE("speed is the least-squares slope of the tracked peak") {
    const Trajectory traj = synthetic_pulse(300, 60.0, 0.37, 6.0, 1.0, 91, 2.0);
    const WaveMeasurement m = measure(traj);
    CHECK(m.speed == doctest::Approx(0.37).epsilon(2e-3));
    CHECK(m.guard == 30);
    CHECK(m.t_begin == 0.0);
    CHECK(m.t_end == doctest::Approx(180.0));
}

TEST_CASE("mirroring the row negates the measured speed") {
    Trajectory traj = synthetic_pulse(300, 60.0, 0.37, 6.0, 1.0, 91, 2.0);
    for (LatticeState& s : traj.snapshots) {
        std::reverse(s.A.begin(), s.A.end());
        std::reverse(s.P.begin(), s.P.end());
        std::reverse(s.R.begin(), s.R.end());
    }
    const WaveMeasurement m = measure(traj);
    CHECK(m.speed == doctest::Approx(-0.37).epsilon(2e-3));
}

TEST_CASE("a stationary peak has zero speed") {
    const Trajectory traj = synthetic_pulse(300, 100.0, 0.0, 6.0, 1.0, 30, 2.0);
    const WaveMeasurement m = measure(traj);
    CHECK(std::fabs(m.speed) < 1e-9);
}

TEST_CASE("width is the threshold crossing distance of the central snapshot") {
    const double w = 6.0;
    const Trajectory traj = synthetic_pulse(300, 60.0, 0.37, w, 1.0, 91, 2.0);
    const WaveMeasurement m = measure(traj, 0.05);
    // Gaussian full width at 5% of peak: 2 w sqrt(ln 20).
    const double expected = 2.0 * w * std::sqrt(std::log(20.0));
    CHECK(std::fabs(m.width - expected) < 0.2);

    // A higher threshold gives a narrower width.
    const WaveMeasurement m2 = measure(traj, 0.5);
    CHECK(std::fabs(m2.width - 2.0 * w * std::sqrt(std::log(2.0))) < 0.2);
    CHECK(m2.width < m.width);
}

TEST_CASE("component heights are suprema over the tracked window") {
    const Trajectory traj = synthetic_pulse(300, 60.0, 0.37, 6.0, 0.8, 91, 2.0);
    const WaveMeasurement m = measure(traj);
    CHECK(m.hA == doctest::Approx(0.8).epsilon(0.005));
    CHECK(m.hP == doctest::Approx(0.24).epsilon(0.005));
    CHECK(m.hR == doctest::Approx(0.16).epsilon(0.005));
}

TEST_CASE("tracking fails cleanly without a usable pulse") {
    // Identically zero row: no positive peak anywhere.
    CHECK_THROWS_AS(track_peak(single_snapshot(std::vector<double>(100, 0.0))),
                    NoPulse);
    // A peak pinned inside the guard band never qualifies.
    const Trajectory traj = synthetic_pulse(300, 10.0, 0.0, 4.0, 1.0, 30, 1.0);
    CHECK_THROWS_AS(track_peak(traj), NoPulse);
    // Fewer qualifying snapshots than requested.
    const Trajectory short_traj = synthetic_pulse(300, 60.0, 0.37, 6.0, 1.0, 5, 2.0);
    CHECK_THROWS_AS(track_peak(short_traj, 10), NoPulse);
    CHECK_NOTHROW(track_peak(short_traj, 5));
}

TEST_CASE("width is undefined when the row never drops below the level") {
    // Bump riding on a tall plateau: the 5% level sits below the plateau.
    Trajectory traj = synthetic_pulse(300, 60.0, 0.37, 6.0, 0.3, 91, 2.0);
    for (LatticeState& s : traj.snapshots)
        for (double& a : s.A) a += 1.0;
    CHECK_THROWS_AS(measure(traj, 0.05), WidthUndefined);
    CHECK_THROWS_AS(measure(traj, 0.0), ValidationError);
    CHECK_THROWS_AS(measure(traj, 1.0), ValidationError);
}

TEST_CASE("power-law fit is exact on exact power-law data") {
    const std::vector<double> x = {1.0, 2.0, 4.0, 8.0, 16.0};
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 * std::pow(v, 0.4));
    const ScalingFit fit = fit_power_law(x, y);
    CHECK(fit.exponent == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(fit.log_prefactor == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(fit.rms_residual < 1e-14);
    CHECK(fit.n_points == 5);
}

TEST_CASE("power-law fit validates its input") {
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0}, {1.0, 2.0}), ValidationError);
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0, 3.0}, {1.0, 2.0}), ValidationError);
    CHECK_THROWS_AS(fit_power_law({1.0, -2.0, 3.0}, {1.0, 2.0, 3.0}), ValidationError);
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0, 3.0}, {1.0, 0.0, 3.0}), ValidationError);
}

TEST_CASE("wave-frame rescaling is the identity at unit amplitude") {
    const double w = 6.0;
    const Trajectory traj = synthetic_pulse(300, 60.0, 0.37, w, 1.0, 91, 2.0);
    const WaveMeasurement m = measure(traj);
    const RescaledProfile r = rescale_profile(m, 8.0, 512);
    double worst = 0.0;
    for (int i = 0; i < r.A.n; ++i)
        worst = std::max(worst, std::fabs(r.A.v[i] - gauss(r.A.x(i), w)));
    CHECK(worst < 0.01);
}

TEST_CASE("wave-frame rescaling undoes the amplitude scaling") {
    // Build a profile that is exactly the scaled template: A = hA g(X),
    // X = hA^{2/5} (j - peak).  Rescaling must return g on the X grid.
    const double hA = 0.01;
    const double sx = std::pow(hA, 0.4);
    const int N = 400;
    WaveMeasurement m;
    m.hA = hA;
    m.peak_x = 200.0;
    m.profile.t = 0.0;
    m.profile.A.resize(N);
    m.profile.P.resize(N);
    m.profile.R.resize(N);
    for (int j = 0; j < N; ++j) {
        const double X = ((j + 1) - m.peak_x) * sx;
        m.profile.A[j] = hA * gauss(X, 1.5);
        m.profile.P[j] = std::pow(hA, 0.2) * gauss(X, 1.5);
        m.profile.R[j] = std::pow(hA, 0.4) * gauss(X, 1.5);
    }
    const RescaledProfile r = rescale_profile(m, 6.0, 512);
    double worst = 0.0;
    for (int i = 0; i < r.A.n; ++i) {
        worst = std::max(worst, std::fabs(r.A.v[i] - gauss(r.A.x(i), 1.5)));
        worst = std::max(worst, std::fabs(r.P.v[i] - gauss(r.P.x(i), 1.5)));
        worst = std::max(worst, std::fabs(r.R.v[i] - gauss(r.R.x(i), 1.5)));
    }
    CHECK(worst < 0.01);
    CHECK_THROWS_AS(rescale_profile(WaveMeasurement{}, 8.0, 512), ValidationError);
}

TEST_CASE("alignment recovers a pure translation") {
    auto ref = [](double x) { return gauss(x, 1.0); };
    GridFunction f = uniform_grid(8.0, 512);
    for (int i = 0; i < f.n; ++i) f.v[i] = ref(f.x(i) - 0.37);
    const AlignResult r = align_to_reference(f, ref, -2.0, 2.0);
    CHECK(r.shift == doctest::Approx(0.37).epsilon(1e-6));
    CHECK(r.distance < 1e-9);
    CHECK(sup_distance(f, ref, 0.37) < 1e-12);
    CHECK(sup_distance(f, ref, 0.0) > 0.2);
    CHECK_THROWS_AS(align_to_reference(f, ref, 1.0, 1.0), ValidationError);
}

TEST_CASE("census finds well-separated peaks above the height floor") {
    const int N = 200;
    std::vector<double> A(N, 0.0);
    for (int j = 0; j < N; ++j) {
        const double x = j + 1;
        A[j] = gauss(x - 50.0, 4.0) + 0.6 * gauss(x - 120.0, 4.0) +
               0.05 * gauss(x - 160.0, 3.0);
    }
    const std::vector<PulseCensus> seq = census(single_snapshot(A), 0.1);
    REQUIRE(seq.size() == 1);
    REQUIRE(seq[0].x.size() == 2);
    CHECK(seq[0].x[0] == doctest::Approx(50.0).epsilon(1e-3));
    CHECK(seq[0].x[1] == doctest::Approx(120.0).epsilon(1e-3));
    CHECK(seq[0].height[0] == doctest::Approx(1.0).epsilon(0.01));
    CHECK(seq[0].height[1] == doctest::Approx(0.6).epsilon(0.01));
    CHECK(max_coexisting(seq) == 2);
    CHECK_THROWS_AS(census(single_snapshot(A), 0.0), ValidationError);
}

TEST_CASE("census suppresses peaks closer than the separation floor") {
    const int N = 200;
    std::vector<double> A(N, 0.0);
    // Two local maxima three cells apart; the taller one wins.
    A[99] = 1.0;
    A[102] = 0.8;
    const std::vector<PulseCensus> seq = census(single_snapshot(A), 0.1, 5);
    REQUIRE(seq[0].x.size() == 1);
    CHECK(seq[0].x[0] == doctest::Approx(100.0).epsilon(1e-6));
}

TEST_CASE("merge counting detects two parents sharing one child peak") {
    auto make_census = [](double t, std::vector<double> xs) {
        PulseCensus pc;
        pc.t = t;
        pc.x = std::move(xs);
        pc.height.assign(pc.x.size(), 1.0);
        return pc;
    };
    // Two peaks seven cells apart collapse onto one between snapshots.
    std::vector<PulseCensus> merged = {make_census(0.0, {100.0, 107.0}),
                                       make_census(1.0, {104.0})};
    CHECK(count_merges(merged, 200) == 1);

    // Control: both peaks persist, just drifting.
    std::vector<PulseCensus> drifting = {make_census(0.0, {100.0, 107.0}),
                                         make_census(1.0, {99.0, 108.0})};
    CHECK(count_merges(drifting, 200) == 0);

    // Disappearance at the absorbing end is not a merge.
    std::vector<PulseCensus> absorbed = {make_census(0.0, {191.0, 196.0}),
                                         make_census(1.0, {195.0})};
    CHECK(count_merges(absorbed, 200) == 0);
}

TEST_CASE("taller-faster check on synthetic pulse tracks") {
    auto make_seq = [](double h_fast, double h_slow) {
        std::vector<PulseCensus> seq;
        for (int k = 0; k < 8; ++k) {
            PulseCensus pc;
            pc.t = k;
            pc.x = {30.0 + 3.0 * k, 100.0 + 1.0 * k};
            pc.height = {h_fast, h_slow};
            seq.push_back(std::move(pc));
        }
        return seq;
    };
    // Fast pulse taller: consistent.
    TallerFasterStats s1 = taller_faster(make_seq(1.0, 0.5), 200);
    CHECK(s1.total == 1);
    CHECK(s1.consistent == 1);
    // Fast pulse shorter: inconsistent.
    TallerFasterStats s2 = taller_faster(make_seq(0.5, 1.0), 200);
    CHECK(s2.total == 1);
    CHECK(s2.consistent == 0);
    // Near-equal heights are skipped as noise.
    TallerFasterStats s3 = taller_faster(make_seq(1.0, 0.99), 200);
    CHECK(s3.total == 0);
}

TEST_CASE("measured scaling laws approach the limits as pulses shrink") {
    // Real pulse runs at small loads.  The measured speed, width, and
    // component heights carry finite-amplitude corrections relative to the
    // limiting power laws; this pins both the fitted exponents over a
    // small-amplitude window and the decay of the R-plateau excess, which is
    // the slowest-converging correction (~2.7 * hA^0.42).
    const ModelParams p{};
    const DerivedConstants dc = derived_constants(p);
    const ProfileContext ctx = make_profile_context(p, dc.c_star, 0.0);
    const double supR = phi_R(ctx, -40.0);

    const std::vector<double> amps = {0.0125, 0.025, 0.05, 0.1};
    const SweepResult sw = sweep_and_fit(p, amps, SimOptions{});

    CHECK(sw.speed_fit.exponent == doctest::Approx(0.4).epsilon(0.08));
    CHECK(sw.width_fit.exponent == doctest::Approx(-0.37).epsilon(0.11));
    CHECK(sw.hP_fit.exponent == doctest::Approx(0.22).epsilon(0.14));
    // the R height converges slowest: still visibly above 2/5 here
    CHECK(sw.hR_fit.exponent > 0.45);
    CHECK(sw.hR_fit.exponent < 0.57);

    // R-plateau excess over the limiting level h_R* hA^{2/5} shrinks with hA
    std::vector<double> excess;
    for (const SweepPoint& pt : sw.points)
        excess.push_back(pt.m.hR / (supR * std::pow(pt.m.hA, 0.4)) - 1.0);
    for (size_t i = 1; i < excess.size(); ++i) CHECK(excess[i] > excess[i - 1]);
    CHECK(excess.front() < 0.2);
    CHECK(excess.back() > 0.5);
}
