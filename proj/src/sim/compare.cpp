#include "gwnk/sim/compare.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace gwnk::sim {

namespace {

constexpr double kNearZero = 1e-8;

void check_same_geometry(const NodeTable& a, const NodeTable& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("compare: node counts differ (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.node_id[k] != b.node_id[k] || a.layer[k] != b.layer[k] || a.x[k] != b.x[k] || a.y[k] != b.y[k]) {
      throw std::invalid_argument("compare: node tables differ at row " + std::to_string(k + 1));
    }
  }
}

}  // namespace

RunData run_data(const RunArtifacts& run) { return {run.nodes, run.final_heads, run.snapshots, run.residual_calls}; }

RunData load_run_directory(const std::filesystem::path& dir) {
  RunData d;
  auto heads = read_head_csv(dir / "heads.csv");
  d.nodes = std::move(heads.nodes);
  d.final_heads = std::move(heads.heads);
  d.snapshots = read_snapshots_csv(dir / "snapshots.csv");
  std::ifstream in(dir / "summary.json");
  if (!in) throw IoError("cannot open '" + (dir / "summary.json").string() + "'");
  try {
    d.residual_calls = nlohmann::json::parse(in).at("residual_calls").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError((dir / "summary.json").string() + ": " + e.what());
  }
  return d;
}

CompareReport compare_runs(const RunData& a, const RunData& b) {
  check_same_geometry(a.nodes, b.nodes);
  if (a.snapshots.size() != b.snapshots.size()) throw std::invalid_argument("compare: snapshot counts differ");
  if (a.residual_calls == 0) throw std::invalid_argument("compare: reference run has no residual calls");

  CompareReport r;
  const std::size_t n = a.nodes.size();
  r.abs_error.resize(n);
  r.rel_error.resize(n);
  r.near_zero.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double e = std::abs(a.final_heads[k] - b.final_heads[k]);
    r.near_zero[k] = std::abs(a.final_heads[k]) < kNearZero;
    r.abs_error[k] = e;
    r.rel_error[k] = r.near_zero[k] ? e : e / std::abs(a.final_heads[k]);
    r.max_abs = std::max(r.max_abs, e);
    r.max_rel = std::max(r.max_rel, r.rel_error[k]);
    r.mean_abs += e / static_cast<double>(n);
    r.mean_rel += r.rel_error[k] / static_cast<double>(n);
  }
  r.call_ratio = static_cast<double>(b.residual_calls) / static_cast<double>(a.residual_calls);

  for (std::size_t s = 0; s < a.snapshots.size(); ++s) {
    const auto& sa = a.snapshots[s];
    const auto& sb = b.snapshots[s];
    if (sa.step != sb.step || sa.heads.size() != n || sb.heads.size() != n) {
      throw std::invalid_argument("compare: snapshot " + std::to_string(s) + " does not line up");
    }
    SnapshotError se{sa.step, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const double e = std::abs(sa.heads[k] - sb.heads[k]);
      se.max_abs = std::max(se.max_abs, e);
      se.max_rel = std::max(se.max_rel, std::abs(sa.heads[k]) < kNearZero ? e : e / std::abs(sa.heads[k]));
    }
    r.snapshots.push_back(se);
  }
  return r;
}

void write_compare_csv(const RunData& a, const RunData& b, const CompareReport& r, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "node_id,x,y,layer,head_a,head_b,abs_error,rel_error,near_zero\n";
  for (std::size_t k = 0; k < a.nodes.size(); ++k) {
    out << a.nodes.node_id[k] << ',' << format_double(a.nodes.x[k]) << ',' << format_double(a.nodes.y[k]) << ','
        << a.nodes.layer[k] << ',' << format_double(a.final_heads[k]) << ',' << format_double(b.final_heads[k]) << ','
        << format_double(r.abs_error[k]) << ',' << format_double(r.rel_error[k]) << ',' << (r.near_zero[k] ? 1 : 0)
        << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_compare_json(const CompareReport& r, const std::filesystem::path& path) {
  nlohmann::json j;
  j["max_abs_error"] = r.max_abs;
  j["mean_abs_error"] = r.mean_abs;
  j["max_rel_error"] = r.max_rel;
  j["mean_rel_error"] = r.mean_rel;
  j["call_ratio"] = r.call_ratio;
  std::size_t flagged = 0;
  for (const bool f : r.near_zero) flagged += f ? 1 : 0;
  j["near_zero_nodes"] = flagged;
  auto& snaps = j["snapshots"] = nlohmann::json::array();
  for (const auto& s : r.snapshots) snaps.push_back({{"step", s.step}, {"max_abs_error", s.max_abs}, {"max_rel_error", s.max_rel}});
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace gwnk::sim
