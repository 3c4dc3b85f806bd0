#include "gwnk/sim/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gwnk::sim {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

void write_head_csv(const NodeTable& nodes, std::span<const double> heads, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "node_id,x,y,layer,head\n";
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    out << nodes.node_id[k] << ',' << format_double(nodes.x[k]) << ',' << format_double(nodes.y[k]) << ','
        << nodes.layer[k] << ',' << format_double(heads[k]) << '\n';
  }
  finish(out, path);
}

void write_snapshots_csv(const RunArtifacts& run, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "step,time,node_id,layer,head\n";
  for (const auto& s : run.snapshots) {
    const std::string prefix = std::to_string(s.step) + ',' + format_double(static_cast<double>(s.step) * run.dt) + ',';
    for (std::size_t k = 0; k < run.nodes.size(); ++k) {
      out << prefix << run.nodes.node_id[k] << ',' << run.nodes.layer[k] << ',' << format_double(s.heads[k]) << '\n';
    }
  }
  finish(out, path);
}

void write_convergence_log(const RunArtifacts& run, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "step,k,norm_f,norm_dh,eta,lambda,inner_iterations,residual_calls\n";
  std::size_t cumulative = 0;
  for (const auto& s : run.steps) {
    for (std::size_t k = 0; k < s.report.per_iteration.size(); ++k) {
      const auto& it = s.report.per_iteration[k];
      cumulative += it.residual_calls;
      out << s.step << ',' << k << ',' << format_double(it.residual_norm) << ',' << format_double(it.step_norm) << ','
          << format_double(it.eta) << ',' << format_double(it.lambda) << ',' << it.krylov_inner_iterations << ','
          << cumulative << '\n';
    }
  }
  finish(out, path);
}

void write_summary_json(const RunArtifacts& run, const std::filesystem::path& path) {
  nlohmann::json j;
  j["scenario"] = run.scenario;
  j["method"] = to_string(run.method);
  j["line_search"] = run.line_search;
  j["dt"] = run.dt;
  j["n_steps"] = run.steps.size();
  j["unknowns"] = run.nodes.size();
  j["residual_calls"] = run.residual_calls;
  j["failed_steps"] = run.failed_steps;
  j["wall_seconds"] = run.wall_seconds;
  std::vector<std::size_t> iterations;
  std::size_t total = 0;
  for (const auto& s : run.steps) {
    iterations.push_back(s.report.newton_iterations);
    total += s.report.newton_iterations;
  }
  j["newton_iterations_total"] = total;
  j["newton_iterations_per_step"] = iterations;
  std::vector<std::size_t> snaps;
  for (const auto& s : run.snapshots) snaps.push_back(s.step);
  j["snapshot_steps"] = snaps;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

void ensure_writable_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
  const auto probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

void write_run_directory(const RunArtifacts& run, const std::filesystem::path& dir) {
  ensure_writable_directory(dir);
  write_head_csv(run.nodes, run.final_heads, dir / "heads.csv");
  write_snapshots_csv(run, dir / "snapshots.csv");
  write_convergence_log(run, dir / "convergence.csv");
  write_summary_json(run, dir / "summary.json");
}

HeadTable read_head_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "node_id,x,y,layer,head") {
    throw IoError(path.string() + ": missing or unexpected header");
  }
  HeadTable t;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 5) throw IoError(path.string() + ":" + std::to_string(n) + ": expected 5 columns");
    t.nodes.node_id.push_back(parse_size(c[0], path, n));
    t.nodes.x.push_back(parse_double(c[1], path, n));
    t.nodes.y.push_back(parse_double(c[2], path, n));
    t.nodes.layer.push_back(parse_size(c[3], path, n));
    t.heads.push_back(parse_double(c[4], path, n));
  }
  return t;
}

std::vector<Snapshot> read_snapshots_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "step,time,node_id,layer,head") {
    throw IoError(path.string() + ": missing or unexpected header");
  }
  std::vector<Snapshot> out;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 5) throw IoError(path.string() + ":" + std::to_string(n) + ": expected 5 columns");
    const std::size_t step = parse_size(c[0], path, n);
    if (out.empty() || out.back().step != step) out.push_back({step, {}});
    out.back().heads.push_back(parse_double(c[4], path, n));
  }
  return out;
}

}  // namespace gwnk::sim
