#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "auxinwave/errors.hpp"
#include "auxinwave/experiment.hpp"
#include "auxinwave/version.hpp"

using namespace auxinwave;

namespace {

ExperimentConfig default_config(const std::string& kind) {
    ExperimentConfig cfg;
    if (kind == "simulate")
        cfg.experiment = PulseRun{};
    else if (kind == "sweep")
        cfg.experiment = SweepRun{};
    else if (kind == "wavetrain")
        cfg.experiment = WavetrainRun{};
    else if (kind == "profiles")
        cfg.experiment = ProfilesRun{};
    else
        cfg.experiment = LongWaveRun{};
    return cfg;
}

ExperimentConfig base_config(const std::string& config_path, const std::string& kind) {
    if (config_path.empty()) return default_config(kind);
    ExperimentConfig cfg = load_config(config_path);
    if (experiment_name(cfg) != kind)
        throw ValidationError("config file is for experiment '" +
                              experiment_name(cfg) + "', but the subcommand is '" +
                              kind + "'");
    return cfg;
}

int run_and_report(const ExperimentConfig& cfg) {
    const RunManifest man = run(cfg);
    std::cout << "experiment:  " << man.experiment << '\n'
              << "output dir:  " << resolve_output_dir(cfg).string() << '\n'
              << "wall time:   " << man.wall_time_seconds << " s\n"
              << "artifacts:\n";
    for (const ManifestEntry& e : man.outputs)
        std::cout << "  " << e.file << "  fnv1a64:" << e.fnv1a64 << '\n';
    std::cout << "manifest.json written; `auxinwave verify <dir>` re-checks hashes\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"auxin travelling-pulse simulation and wave-analysis toolkit"};
    app.set_version_flag("--version", std::string("auxinwave ") + kVersion);
    app.require_subcommand(1);

    int rc = 0;

    // ----- simulate -----------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "one travelling-pulse run");
    struct {
        std::string config, output;
        double a = 0, dt = 0, t_end = 0, thr = 0;
        int N = 0, se = 0;
    } s;
    sim->add_option("-c,--config", s.config, "JSON config file");
    sim->add_option("-o,--output", s.output, "output directory (overrides config)");
    sim->add_option("--a-diamond", s.a, "initial auxin load in cell 1");
    sim->add_option("--cells", s.N, "row length N");
    sim->add_option("--t-end", s.t_end, "time horizon (0 = auto)");
    sim->add_option("--dt", s.dt, "integrator step (0 = auto)");
    sim->add_option("--sample-every", s.se, "steps between snapshots (0 = auto)");
    sim->add_option("--width-threshold", s.thr, "width level as fraction of peak");
    sim->callback([&] {
        ExperimentConfig cfg = base_config(s.config, "simulate");
        auto& e = std::get<PulseRun>(cfg.experiment);
        if (sim->count("--a-diamond")) e.A_diamond = s.a;
        if (sim->count("--cells")) e.sim.N = s.N;
        if (sim->count("--t-end")) e.sim.t_end = s.t_end;
        if (sim->count("--dt")) e.sim.dt = s.dt;
        if (sim->count("--sample-every")) e.sim.sample_every = s.se;
        if (sim->count("--width-threshold")) e.sim.width_threshold = s.thr;
        if (sim->count("--output")) cfg.output_dir = s.output;
        rc = run_and_report(cfg);
    });

    // ----- sweep --------------------------------------------------------
    auto* swp = app.add_subcommand("sweep",
                                   "amplitude sweep with power-law fits");
    struct {
        std::string config, output;
        std::vector<double> amps;
        double dt = 0, t_end = 0, thr = 0;
        int N = 0;
    } w;
    swp->add_option("-c,--config", w.config, "JSON config file");
    swp->add_option("-o,--output", w.output, "output directory (overrides config)");
    swp->add_option("--amplitudes", w.amps, "comma-separated A_diamond values")
        ->delimiter(',');
    swp->add_option("--cells", w.N, "row length N");
    swp->add_option("--t-end", w.t_end, "time horizon (0 = auto)");
    swp->add_option("--dt", w.dt, "integrator step (0 = auto)");
    swp->add_option("--width-threshold", w.thr, "width level as fraction of peak");
    swp->callback([&] {
        ExperimentConfig cfg = base_config(w.config, "sweep");
        auto& e = std::get<SweepRun>(cfg.experiment);
        if (swp->count("--amplitudes")) e.A_diamond_list = w.amps;
        if (swp->count("--cells")) e.sim.N = w.N;
        if (swp->count("--t-end")) e.sim.t_end = w.t_end;
        if (swp->count("--dt")) e.sim.dt = w.dt;
        if (swp->count("--width-threshold")) e.sim.width_threshold = w.thr;
        if (swp->count("--output")) cfg.output_dir = w.output;
        rc = run_and_report(cfg);
    });

    // ----- wavetrain ----------------------------------------------------
    auto* trn = app.add_subcommand("wavetrain",
                                   "sustained-influx multi-pulse run");
    struct {
        std::string config, output;
        double influx = 0, t_end = 0, dt = 0, minh = 0, delta = 0, k2 = 0;
        int N = 0, se = 0;
    } t;
    trn->add_option("-c,--config", t.config, "JSON config file");
    trn->add_option("-o,--output", t.output, "output directory (overrides config)");
    trn->add_option("--influx", t.influx, "left-edge auxin influx rate");
    trn->add_option("--cells", t.N, "row length N");
    trn->add_option("--t-end", t.t_end, "time horizon");
    trn->add_option("--dt", t.dt, "integrator step (0 = auto)");
    trn->add_option("--sample-every", t.se, "steps between snapshots (0 = auto)");
    trn->add_option("--min-height", t.minh, "census pulse-height threshold");
    trn->add_option("--delta", t.delta, "carrier decay rate (model parameter)");
    trn->add_option("--k2", t.k2, "depolarization rate (model parameter)");
    trn->callback([&] {
        ExperimentConfig cfg = base_config(t.config, "wavetrain");
        auto& e = std::get<WavetrainRun>(cfg.experiment);
        if (trn->count("--influx")) e.influx_rate = t.influx;
        if (trn->count("--cells")) e.N = t.N;
        if (trn->count("--t-end")) e.t_end = t.t_end;
        if (trn->count("--dt")) e.dt = t.dt;
        if (trn->count("--sample-every")) e.sample_every = t.se;
        if (trn->count("--min-height")) e.census_min_height = t.minh;
        if (trn->count("--delta")) cfg.params.delta = t.delta;
        if (trn->count("--k2")) cfg.params.k_2 = t.k2;
        if (trn->count("--output")) cfg.output_dir = t.output;
        rc = run_and_report(cfg);
    });

    // ----- profiles -----------------------------------------------------
    auto* prf = app.add_subcommand("profiles",
                                   "tabulate the closed-form wave profiles");
    struct {
        std::string config, output;
        double c0 = 0, theta = 0, xmin = 0, xmax = 0, thr = 0;
        int n = 0;
    } p;
    prf->add_option("-c,--config", p.config, "JSON config file");
    prf->add_option("-o,--output", p.output, "output directory (overrides config)");
    prf->add_option("--c0", p.c0, "wave speed coefficient (0 = c_star)");
    prf->add_option("--theta", p.theta, "profile translation");
    prf->add_option("--x-min", p.xmin, "left edge of the tabulation");
    prf->add_option("--x-max", p.xmax, "right edge of the tabulation");
    prf->add_option("--n-points", p.n, "number of tabulation points");
    prf->add_option("--width-threshold", p.thr, "w_star level");
    prf->callback([&] {
        ExperimentConfig cfg = base_config(p.config, "profiles");
        auto& e = std::get<ProfilesRun>(cfg.experiment);
        if (prf->count("--c0")) e.c0 = p.c0;
        if (prf->count("--theta")) e.theta = p.theta;
        if (prf->count("--x-min")) e.X_min = p.xmin;
        if (prf->count("--x-max")) e.X_max = p.xmax;
        if (prf->count("--n-points")) e.n = p.n;
        if (prf->count("--width-threshold")) e.width_threshold = p.thr;
        if (prf->count("--output")) cfg.output_dir = p.output;
        rc = run_and_report(cfg);
    });

    // ----- longwave -----------------------------------------------------
    auto* lw = app.add_subcommand("longwave",
                                  "fixed-point profile corrections over nu");
    struct {
        std::string config, output;
        std::vector<double> nus;
        double c0 = 0, theta = 0, L = 0, damping = 0, ptol = 0, qtol = 0, q = 0;
        int n = 0, iters = 0;
    } l;
    lw->add_option("-c,--config", l.config, "JSON config file");
    lw->add_option("-o,--output", l.output, "output directory (overrides config)");
    lw->add_option("--nu", l.nus, "comma-separated nu values")->delimiter(',');
    lw->add_option("--c0", l.c0, "wave speed coefficient (0 = c_star)");
    lw->add_option("--theta", l.theta, "profile translation");
    lw->add_option("--half-width", l.L, "truncation half-width (0 = auto)");
    lw->add_option("--grid-n", l.n, "grid size (power of two)");
    lw->add_option("--max-iter", l.iters, "iteration cap");
    lw->add_option("--damping", l.damping, "update relaxation in (0, 1]");
    lw->add_option("--picard-tol", l.ptol, "fixed-point update tolerance");
    lw->add_option("--quad-tol", l.qtol, "quadrature / leak tolerance");
    lw->add_option("--q-rate", l.q, "weight rate for norms (0 = c0/(2 tau2))");
    lw->callback([&] {
        ExperimentConfig cfg = base_config(l.config, "longwave");
        auto& e = std::get<LongWaveRun>(cfg.experiment);
        if (lw->count("--nu")) e.nu_list = l.nus;
        if (lw->count("--c0")) e.solver.c0 = l.c0;
        if (lw->count("--theta")) e.solver.theta = l.theta;
        if (lw->count("--half-width")) e.solver.L = l.L;
        if (lw->count("--grid-n")) e.solver.n = l.n;
        if (lw->count("--max-iter")) e.solver.max_iter = l.iters;
        if (lw->count("--damping")) e.solver.damping = l.damping;
        if (lw->count("--picard-tol")) e.solver.picard_tol = l.ptol;
        if (lw->count("--quad-tol")) e.solver.quad_tol = l.qtol;
        if (lw->count("--q-rate")) e.solver.q = l.q;
        if (lw->count("--output")) cfg.output_dir = l.output;
        rc = run_and_report(cfg);
    });

    // ----- verify ---------------------------------------------------------
    auto* ver = app.add_subcommand("verify",
                                   "re-run a manifest's config and compare hashes");
    std::string vdir;
    ver->add_option("run_dir", vdir, "directory containing manifest.json")
        ->required();
    ver->callback([&] {
        std::string report;
        const bool ok = verify_run(vdir, &report);
        std::cout << report;
        rc = ok ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
