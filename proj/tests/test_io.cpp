#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "auxinwave/errors.hpp"
#include "auxinwave/experiment.hpp"
#include "auxinwave/lattice.hpp"
#include "auxinwave/svg.hpp"
#include "auxinwave/table_io.hpp"

using namespace auxinwave;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("auxinwave-tests-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("doubles survive a CSV round trip unchanged") {
    for (double x : {1.0 / 3.0, 0.1, -2.718281828459045e10, 1e-300, 0.0, 42.0}) {
        const std::string s = format_g17(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("CSV writer emits a rectangular table with header") {
    const fs::path dir = fresh_dir("csv");
    write_csv(dir / "t.csv", Table{{"a", "b"}, {{1.0, 2.0}, {3.0, 0.5}}});
    CHECK(read_text_file(dir / "t.csv") == "a,b\n1,2\n3,0.5\n");
    CHECK_THROWS_AS(write_csv(dir / "bad.csv", Table{{"a", "b"}, {{1.0}}}),
                    ValidationError);
}

TEST_CASE("binary trajectory container round-trips exactly") {
    const fs::path dir = fresh_dir("bin");
    ModelParams p{};
    p.delta = 0.25;
    p.k_2 = 0.125;
    Trajectory tr;
    tr.dt = 0.03125;
    tr.sample_every = 7;
    tr.params = p;
    tr.bc = InfluxLeft{0.125};
    for (int k = 0; k < 3; ++k) {
        LatticeState s;
        s.t = 0.21875 * k;
        for (int j = 0; j < 4; ++j) {
            s.A.push_back(0.1 * j + k + 1.0 / 3.0);
            s.P.push_back(0.2 * j - k);
            s.R.push_back(1e-9 * j * k);
        }
        tr.snapshots.push_back(std::move(s));
    }
    write_trajectory_bin(dir / "t.bin", tr);
    const Trajectory rd = read_trajectory_bin(dir / "t.bin");

    CHECK(rd.dt == tr.dt);
    CHECK(rd.sample_every == tr.sample_every);
    CHECK(rd.params.delta == 0.25);
    CHECK(rd.params.k_2 == 0.125);
    REQUIRE(std::holds_alternative<InfluxLeft>(rd.bc));
    CHECK(std::get<InfluxLeft>(rd.bc).rate == 0.125);
    REQUIRE(rd.snapshots.size() == 3);
    for (size_t k = 0; k < 3; ++k) {
        CHECK(rd.snapshots[k].t == tr.snapshots[k].t);
        for (int j = 0; j < 4; ++j) {
            CHECK(rd.snapshots[k].A[j] == tr.snapshots[k].A[j]);
            CHECK(rd.snapshots[k].P[j] == tr.snapshots[k].P[j]);
            CHECK(rd.snapshots[k].R[j] == tr.snapshots[k].R[j]);
        }
    }
}

TEST_CASE("binary trajectory reader rejects corrupted files") {
    const fs::path dir = fresh_dir("bin-bad");
    Trajectory tr;
    tr.dt = 0.1;
    tr.sample_every = 1;
    LatticeState s;
    s.A = {1.0, 2.0, 3.0};
    s.P = {0.0, 0.0, 0.0};
    s.R = {0.0, 0.0, 0.0};
    tr.snapshots.push_back(s);
    write_trajectory_bin(dir / "ok.bin", tr);

    std::string raw = read_text_file(dir / "ok.bin");
    write_text_file(dir / "trunc.bin", raw.substr(0, raw.size() - 5));
    CHECK_THROWS_AS(read_trajectory_bin(dir / "trunc.bin"), ParseError);

    raw[0] = 'X';  // break the magic
    write_text_file(dir / "magic.bin", raw);
    CHECK_THROWS_AS(read_trajectory_bin(dir / "magic.bin"), ParseError);

    CHECK_THROWS_AS(read_trajectory_bin(dir / "missing.bin"), IoError);
}

TEST_CASE("trajectory CSV uses the documented long format") {
    const fs::path dir = fresh_dir("traj-csv");
    Trajectory tr;
    tr.dt = 0.5;
    tr.sample_every = 1;
    LatticeState s;
    s.t = 0.0;
    s.A = {1.5, 0.0};
    s.P = {0.25, 0.0};
    s.R = {0.0, 2.0};
    tr.snapshots.push_back(s);
    write_trajectory_csv(dir / "t.csv", tr);
    const std::string text = read_text_file(dir / "t.csv");
    CHECK(contains(text, "t,j,A,P,R\n"));
    CHECK(contains(text, "0,1,1.5,0.25,0\n"));  // first cell is j = 1
    CHECK(contains(text, "0,2,0,0,2\n"));
}

TEST_CASE("content hash matches the published reference vectors") {
    CHECK(hex64(fnv1a64("", 0)) == "cbf29ce484222325");
    CHECK(hex64(fnv1a64("a", 1)) == "af63dc4c8601ec8c");
    CHECK(hex64(fnv1a64("foobar", 6)) == "85944171f73967e8");
    CHECK(hex64(0) == "0000000000000000");

    const fs::path dir = fresh_dir("hash");
    write_text_file(dir / "f.txt", "foobar");
    CHECK(hex64(hash_file(dir / "f.txt")) == "85944171f73967e8");
    CHECK_THROWS_AS(read_text_file(dir / "nope.txt"), IoError);
}

TEST_CASE("config parsing fills documented defaults") {
    const ExperimentConfig cfg =
        config_from_json_text(R"({"experiment": "simulate"})", "test");
    CHECK(experiment_name(cfg) == "simulate");
    const PulseRun& e = std::get<PulseRun>(cfg.experiment);
    CHECK(e.A_diamond == 0.15);
    CHECK(e.sim.N == 500);
    CHECK(e.sim.width_threshold == 0.05);
    CHECK(e.sim.dt == 0.0);
    CHECK(cfg.params.T_act == 800.0);
    CHECK(cfg.params.delta == 0.0);
    CHECK(cfg.output_dir.empty());
}

TEST_CASE("config parsing rejects malformed and inconsistent input") {
    CHECK_THROWS_AS(config_from_json_text("", "test"), ParseError);
    CHECK_THROWS_AS(config_from_json_text("{not json", "test"), ParseError);
    CHECK_THROWS_AS(config_from_json_text(R"([1, 2])", "test"), ParseError);
    // missing experiment kind
    CHECK_THROWS_AS(config_from_json_text(R"({"params": {}})", "test"),
                    ValidationError);
    // unknown experiment
    CHECK_THROWS_AS(config_from_json_text(R"({"experiment": "warp"})", "test"),
                    ValidationError);
    // unknown top-level key
    CHECK_THROWS_AS(
        config_from_json_text(R"({"experiment": "simulate", "turbo": 1})", "test"),
        ValidationError);
    // unknown field inside a section
    CHECK_THROWS_AS(config_from_json_text(
                        R"({"experiment": "simulate", "simulate": {"speed": 3}})",
                        "test"),
                    ValidationError);
    // section for a different experiment kind
    CHECK_THROWS_AS(config_from_json_text(
                        R"({"experiment": "simulate", "sweep": {}})", "test"),
                    ValidationError);
    // invalid values
    CHECK_THROWS_AS(config_from_json_text(
                        R"({"experiment": "simulate",
                            "simulate": {"A_diamond": -1}})",
                        "test"),
                    ValidationError);
    CHECK_THROWS_AS(config_from_json_text(
                        R"({"experiment": "simulate", "params": {"T_act": 0}})",
                        "test"),
                    ValidationError);
    CHECK_THROWS_AS(config_from_json_text(
                        R"({"experiment": "profiles", "profiles": {"n": 1}})",
                        "test"),
                    ValidationError);
}

TEST_CASE("bundled presets load with their documented settings") {
    const fs::path root = AUXINWAVE_SOURCE_DIR;

    const ExperimentConfig fig2 = load_config(root / "configs" / "fig2.json");
    CHECK(experiment_name(fig2) == "simulate");
    CHECK(std::get<PulseRun>(fig2.experiment).A_diamond == 0.15);
    CHECK(std::get<PulseRun>(fig2.experiment).sim.N == 500);
    CHECK(fig2.params.delta == 0.0);
    CHECK(fig2.params.k_2 == 0.0);
    CHECK(fig2.params.T_act == 800.0);

    const ExperimentConfig fig5 = load_config(root / "configs" / "fig5.json");
    CHECK(experiment_name(fig5) == "wavetrain");
    const WavetrainRun& w = std::get<WavetrainRun>(fig5.experiment);
    CHECK(w.influx_rate == 0.025);
    CHECK(w.N == 500);
    CHECK(fig5.params.delta == 0.1);
    CHECK(fig5.params.k_2 == 0.2);

    CHECK_THROWS_AS(load_config(root / "configs" / "nonexistent.json"), IoError);
}

TEST_CASE("config echo is stable under a parse round trip") {
    const std::string text = R"({
        "experiment": "profiles",
        "params": {"alpha": 0.2},
        "profiles": {"c0": 0.5, "n": 512},
        "output_dir": "out/custom"
    })";
    const ExperimentConfig cfg = config_from_json_text(text, "test");
    const std::string echo1 = config_to_json_text(cfg);
    const ExperimentConfig cfg2 = config_from_json_text(echo1, "echo");
    const std::string echo2 = config_to_json_text(cfg2);
    CHECK(echo1 == echo2);
    CHECK(std::get<ProfilesRun>(cfg2.experiment).c0 == 0.5);
    CHECK(std::get<ProfilesRun>(cfg2.experiment).n == 512);
    CHECK(cfg2.params.alpha == 0.2);
    CHECK(cfg2.output_dir == fs::path("out/custom"));
}

TEST_CASE("output directory resolution honours the environment root") {
    ExperimentConfig cfg = config_from_json_text(R"({"experiment": "profiles"})",
                                                 "test");
    unsetenv("AUXINWAVE_OUTPUT_ROOT");
    CHECK(resolve_output_dir(cfg) == fs::path("out") / "profiles");

    setenv("AUXINWAVE_OUTPUT_ROOT", "/tmp/auxin-root", 1);
    CHECK(resolve_output_dir(cfg) == fs::path("/tmp/auxin-root/out/profiles"));

    cfg.output_dir = "runs/a";
    CHECK(resolve_output_dir(cfg) == fs::path("/tmp/auxin-root/runs/a"));

    cfg.output_dir = "/abs/path";
    CHECK(resolve_output_dir(cfg) == fs::path("/abs/path"));
    unsetenv("AUXINWAVE_OUTPUT_ROOT");
}

TEST_CASE("profile run emits hashed artifacts and a clean manifest") {
    const fs::path dir = fresh_dir("run-profiles");
    ExperimentConfig cfg = config_from_json_text(
        R"({"experiment": "profiles", "profiles": {"n": 128}})", "test");
    cfg.output_dir = dir / "a";

    const RunManifest man = run(cfg);
    CHECK(man.status == "ok");
    CHECK(man.experiment == "profiles");
    CHECK(man.wall_time_seconds >= 0.0);
    REQUIRE(man.outputs.size() >= 3);
    for (const ManifestEntry& e : man.outputs) {
        const fs::path f = cfg.output_dir / e.file;
        REQUIRE(fs::exists(f));
        CHECK(hex64(hash_file(f)) == e.fnv1a64);
    }
    CHECK(fs::exists(cfg.output_dir / "manifest.json"));
    CHECK(fs::exists(cfg.output_dir / "profiles.csv"));
    CHECK(fs::exists(cfg.output_dir / "constants.csv"));
    CHECK(fs::exists(cfg.output_dir / "profiles.svg"));

    // byte-identical artifacts on a re-run
    ExperimentConfig cfg2 = cfg;
    cfg2.output_dir = dir / "b";
    const RunManifest man2 = run(cfg2);
    REQUIRE(man2.outputs.size() == man.outputs.size());
    for (size_t i = 0; i < man.outputs.size(); ++i) {
        CHECK(man.outputs[i].file == man2.outputs[i].file);
        CHECK(man.outputs[i].fnv1a64 == man2.outputs[i].fnv1a64);
    }

    // verification re-runs the embedded config and compares hashes
    std::string report;
    CHECK(verify_run(cfg.output_dir, &report));
    CHECK(contains(report, "ok"));
    CHECK(!contains(report, "MISMATCH"));
}

TEST_CASE("verification notices a tampered artifact") {
    const fs::path dir = fresh_dir("verify-tamper");
    ExperimentConfig cfg = config_from_json_text(
        R"({"experiment": "profiles", "profiles": {"n": 128}})", "test");
    cfg.output_dir = dir;
    run(cfg);
    // clobber one artifact after the fact
    write_text_file(dir / "constants.csv", "tampered\n");
    std::string report;
    CHECK(!verify_run(dir, &report));
    CHECK(contains(report, "MISMATCH"));
}

TEST_CASE("failed runs still leave a machine-readable manifest") {
    const fs::path dir = fresh_dir("run-error");
    // 60-cell row has no interior window, so no pulse can ever qualify.
    ExperimentConfig cfg = config_from_json_text(
        R"({"experiment": "simulate",
            "simulate": {"A_diamond": 0.15, "N": 60, "t_end": 1.0, "dt": 0.05}})",
        "test");
    cfg.output_dir = dir;
    CHECK_THROWS_AS(run(cfg), NoPulse);

    const std::string man = read_text_file(dir / "manifest.json");
    CHECK(contains(man, "\"status\": \"error\""));
    CHECK(contains(man, "\"NoPulse\""));
}

TEST_CASE("SVG writer produces a self-contained deterministic plot") {
    const fs::path dir = fresh_dir("svg");
    PlotSpec spec;
    spec.title = "test plot";
    spec.xlabel = "x";
    spec.ylabel = "y";
    Series s;
    s.label = "rising & falling";  // exercises XML escaping
    s.x = {1.0, 2.0, 3.0, 4.0};
    s.y = {1.0, 4.0, 2.0, 3.0};
    s.points = true;
    spec.series.push_back(s);
    write_svg_plot(dir / "p.svg", spec);
    const std::string svg = read_text_file(dir / "p.svg");
    CHECK(contains(svg, "<svg"));
    CHECK(contains(svg, "</svg>"));
    CHECK(contains(svg, "polyline"));
    CHECK(contains(svg, "rising &amp; falling"));

    // log axes silently drop non-positive points instead of failing
    spec.logy = true;
    spec.series[0].y = {1.0, -4.0, 2.0, 3.0};
    write_svg_plot(dir / "log.svg", spec);
    CHECK(contains(read_text_file(dir / "log.svg"), "<svg"));
}
