#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "gwnk/sim/csv_io.hpp"
#include "gwnk/sim/driver.hpp"

namespace gwnk::sim {

/// Final state, snapshots and cost of one run, as compared by compare_runs.
struct RunData {
  NodeTable nodes;
  Vector final_heads;
  std::vector<Snapshot> snapshots;
  std::size_t residual_calls = 0;
};

RunData run_data(const RunArtifacts& run);
RunData load_run_directory(const std::filesystem::path& dir);

struct SnapshotError {
  std::size_t step = 0;
  double max_abs = 0.0;
  double max_rel = 0.0;
};

struct CompareReport {
  std::vector<double> abs_error;
  std::vector<double> rel_error;    // equals abs_error where flagged
  std::vector<bool> near_zero;      // |h_a| < 1e-8: relative error undefined
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double max_rel = 0.0;
  double mean_rel = 0.0;
  double call_ratio = 0.0;          // residual calls b / a
  std::vector<SnapshotError> snapshots;
};

/// a is the reference (NK) run. Throws std::invalid_argument on geometry mismatch.
CompareReport compare_runs(const RunData& a, const RunData& b);

void write_compare_csv(const RunData& a, const RunData& b, const CompareReport& r, const std::filesystem::path& path);
void write_compare_json(const CompareReport& r, const std::filesystem::path& path);

}  // namespace gwnk::sim
