#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "auxinwave/longwave.hpp"
#include "auxinwave/metrology.hpp"
#include "auxinwave/model.hpp"

namespace auxinwave {

// One loaded cell, one travelling pulse, full trajectory + measurement.
struct PulseRun {
    double A_diamond = 0.15;
    SimOptions sim;
};

// One pulse per amplitude; power-law fits of speed/width/heights vs hA.
struct SweepRun {
    std::vector<double> A_diamond_list = {0.05, 0.1, 0.15, 0.2, 0.3};
    SimOptions sim;
};

// Sustained left influx on the expanded system; pulse census + merge stats.
struct WavetrainRun {
    double influx_rate = 0.025;
    int N = 500;
    double t_end = 6000.0;
    double dt = 0.0;                 // 0 -> conservative default
    int sample_every = 0;            // 0 -> a few hundred snapshots
    double census_min_height = 0.02; // absolute A threshold for pulse counting
};

// Closed-form wave-frame profile tabulation.
struct ProfilesRun {
    double c0 = 0.0;  // 0 -> c_star
    double theta = 0.0;
    double X_min = -8.0;
    double X_max = 8.0;
    int n = 2048;
    double width_threshold = 0.05;
};

// Fixed-point profile corrections over a list of nu values + symbol table.
struct LongWaveRun {
    std::vector<double> nu_list = {0.05, 0.1, 0.2};
    SolverConfig solver;  // solver.c0 == 0 -> c_star; params overridden by config
};

using ExperimentVariant =
    std::variant<PulseRun, SweepRun, WavetrainRun, ProfilesRun, LongWaveRun>;

struct ExperimentConfig {
    ModelParams params;
    ExperimentVariant experiment;
    std::filesystem::path output_dir;  // empty -> out/<experiment-name>
};

// JSON schema (documented in the README):
//   { "experiment": "simulate" | "sweep" | "wavetrain" | "profiles" | "longwave",
//     "params": { ... model parameters ... },
//     "<experiment-name>": { ... variant fields ... },
//     "output_dir": "relative/or/absolute/path" }
// Unknown fields are rejected (ValidationError); malformed JSON raises
// ParseError with the position from the parser.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json_text(const std::string& text,
                                       const std::string& origin);

std::string experiment_name(const ExperimentConfig& cfg);

// Normalized JSON echo of a config (all defaults filled in); this is what the
// run manifest embeds and what verification re-runs.
std::string config_to_json_text(const ExperimentConfig& cfg);

struct ManifestEntry {
    std::string file;   // relative to the run directory
    std::string fnv1a64;
};

struct RunManifest {
    std::string version;
    std::string experiment;
    std::string config_echo;  // JSON text
    double wall_time_seconds = 0.0;
    std::vector<ManifestEntry> outputs;
    std::string status = "ok";
    std::string error_type;
    std::string error_message;
};

// Relative output_dir values resolve under $AUXINWAVE_OUTPUT_ROOT when set,
// otherwise under the current directory.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg);

// Runs the experiment and writes its CSV/SVG artifacts plus manifest.json
// into the resolved output directory.  On a module error the manifest is
// still written (status "error" + machine-readable record) and the exception
// is rethrown so callers can map it to a nonzero exit code.
RunManifest run(const ExperimentConfig& cfg);

// Re-runs the config embedded in <run_dir>/manifest.json into a temporary
// directory and compares artifact hashes against the manifest.  Returns true
// when every artifact matches; a human-readable report is appended to
// *report when non-null.
bool verify_run(const std::filesystem::path& run_dir, std::string* report);

}  // namespace auxinwave
