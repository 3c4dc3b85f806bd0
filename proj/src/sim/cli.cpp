#include "gwnk/sim/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "gwnk/sim/compare.hpp"
#include "gwnk/sim/config.hpp"
#include "gwnk/sim/csv_io.hpp"
#include "gwnk/sim/driver.hpp"

namespace gwnk::sim {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kSolver = 2;
constexpr int kIo = 3;

int run_command(const std::string& target, const std::string& out_dir, const std::string& method,
                const std::optional<std::size_t>& steps, bool quiet) {
  ScenarioConfig cfg = load_scenario(target);
  if (!method.empty()) cfg.solver.method = parse_method(method);
  if (steps) cfg.n_steps = *steps;
  ensure_writable_directory(out_dir);

  const std::size_t every = std::max<std::size_t>(1, cfg.n_steps / 20);
  const auto progress = [&](const StepRecord& r) {
    if (quiet || (r.step % every != 0 && r.step != cfg.n_steps && !r.failed)) return;
    std::cerr << "step " << r.step << "/" << cfg.n_steps << ": " << r.report.newton_iterations << " Newton iterations"
              << (r.failed ? " (not converged)" : "") << '\n';
  };
  const RunArtifacts run = run_simulation(cfg, progress);
  write_run_directory(run, out_dir);
  std::cout << cfg.name << " " << to_string(run.method) << ": " << run.steps.size() << " steps, "
            << run.residual_calls << " residual calls, " << run.failed_steps << " unconverged steps, "
            << run.wall_seconds << " s\n";
  return kOk;
}

int compare_command(const std::string& a_dir, const std::string& b_dir, const std::string& out_file) {
  const RunData a = load_run_directory(a_dir);
  const RunData b = load_run_directory(b_dir);
  const CompareReport r = compare_runs(a, b);
  write_compare_csv(a, b, r, out_file);
  std::filesystem::path json = out_file;
  json.replace_extension(".json");
  write_compare_json(r, json);
  std::cout << "max |h_a - h_b| = " << r.max_abs << "\n"
            << "max relative error = " << r.max_rel << "\n"
            << "residual call ratio (b/a) = " << r.call_ratio << "\n";
  for (const auto& s : r.snapshots) std::cout << "  step " << s.step << ": max abs error " << s.max_abs << "\n";
  return kOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Newton-Krylov groundwater flow simulator"};
  app.require_subcommand(1);

  std::string target, out_dir, method;
  std::optional<std::size_t> steps;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run a builtin scenario or a config file");
  run->add_option("scenario", target, "Builtin name (tc1, tc2) or config path")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--method", method, "nk or jfnk (overrides the config)")->check(CLI::IsMember({"nk", "jfnk"}));
  run->add_option("--steps", steps, "Override the number of time steps");
  run->add_flag("--quiet", quiet, "No progress output");

  std::string a_dir, b_dir, out_file;
  auto* cmp = app.add_subcommand("compare", "Compare two run directories (first is the reference)");
  cmp->add_option("reference", a_dir, "Reference run directory (NK)")->required();
  cmp->add_option("other", b_dir, "Run directory to compare (JFNK)")->required();
  cmp->add_option("--out", out_file, "Per-node error CSV; a .json summary is written next to it")->required();

  auto* list = app.add_subcommand("scenarios", "List builtin scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : builtin_names()) {
        const auto cfg = builtin_scenario(name);
        std::cout << name << "  " << (cfg.is_fd() ? "single-layer finite differences" : "two-layer finite elements")
                  << ", " << cfg.n_steps << " steps of " << cfg.dt << " day\n";
      }
      return kOk;
    }
    if (run->parsed()) return run_command(target, out_dir, method, steps, quiet);
    return compare_command(a_dir, b_dir, out_file);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolver;
  } catch (const SimulationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace gwnk::sim
