#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "auxinwave/lattice.hpp"

namespace auxinwave {

// Rectangular numeric table serialized as CSV with %.17g formatting
// (shortest round-trip-exact representation for doubles).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_g17(double x);
void write_csv(const std::filesystem::path& path, const Table& table);

// Long-format trajectory dump, one row per (snapshot, cell): t, j, A, P, R
// with j 1-based.  Units: t in model time, concentrations as simulated.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& tr);

// Compact versioned binary trajectory container (explicit little-endian):
//   magic "AUXWTRJ1" (8 bytes)
//   u64 N, u64 n_snapshots, f64 dt, u64 sample_every
//   u32 bc tag (0 ClosedRow, 1 InfluxLeft, 2 Periodic), f64 influx rate
//   f64 params: T_act, T_diff, k_a, k_r, k_m, k_1, alpha, delta, k_2
//   per snapshot: f64 t, then N f64 each of A, P, R
// read_trajectory_bin round-trips write_trajectory_bin exactly.
void write_trajectory_bin(const std::filesystem::path& path, const Trajectory& tr);
Trajectory read_trajectory_bin(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// FNV-1a 64-bit content hash (manifest determinism checks, not cryptographic).
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t hash_file(const std::filesystem::path& path);
std::string hex64(std::uint64_t h);

}  // namespace auxinwave
