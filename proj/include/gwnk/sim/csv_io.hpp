#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwnk/sim/driver.hpp"

namespace gwnk::sim {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

void write_head_csv(const NodeTable& nodes, std::span<const double> heads, const std::filesystem::path& path);
void write_snapshots_csv(const RunArtifacts& run, const std::filesystem::path& path);
void write_convergence_log(const RunArtifacts& run, const std::filesystem::path& path);
void write_summary_json(const RunArtifacts& run, const std::filesystem::path& path);

/// heads.csv, snapshots.csv, convergence.csv and summary.json under dir.
void write_run_directory(const RunArtifacts& run, const std::filesystem::path& dir);

struct HeadTable {
  NodeTable nodes;
  Vector heads;
};
HeadTable read_head_csv(const std::filesystem::path& path);

/// Snapshots in file order, each with heads in unknown order.
std::vector<Snapshot> read_snapshots_csv(const std::filesystem::path& path);

/// Fails with IoError when dir cannot be created or written.
void ensure_writable_directory(const std::filesystem::path& dir);

}  // namespace gwnk::sim
