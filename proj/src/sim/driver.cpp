#include "gwnk/sim/driver.hpp"

#include <chrono>

namespace gwnk::sim {

RunArtifacts run_simulation(const ScenarioConfig& cfg, const ProgressFn& progress) {
  return run_simulation(cfg, Scenario(cfg).initial_heads(), progress);
}

RunArtifacts run_simulation(const ScenarioConfig& cfg, std::span<const double> initial_heads,
                            const ProgressFn& progress) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario scenario(cfg);
  if (initial_heads.size() != scenario.unknowns()) {
    throw krylov::ContractViolation("run_simulation: initial heads have length " + std::to_string(initial_heads.size()) +
                                    ", expected " + std::to_string(scenario.unknowns()));
  }

  RunArtifacts run;
  run.scenario = cfg.name;
  run.method = cfg.solver.method;
  run.line_search = cfg.solver.line_search_enabled();
  run.dt = cfg.dt;
  run.nodes = scenario.nodes();

  nonlinear::NewtonSettings newton = cfg.solver.newton;
  newton.use_line_search = run.line_search;
  const bool exact = cfg.solver.method == Method::NK;
  const bool precondition = exact && cfg.solver.precondition;

  Vector h(initial_heads.begin(), initial_heads.end());
  run.snapshots.push_back({0, h});
  for (std::size_t step = 1; step <= cfg.n_steps; ++step) {
    const StepSystem system = scenario.make_step(h);
    const nonlinear::ResidualFunction f(scenario.unknowns(), system.residual);
    const nonlinear::JacobianMode mode = exact ? nonlinear::JacobianMode{nonlinear::ExactJacobian{system.jacobian}}
                                               : nonlinear::JacobianMode{nonlinear::FiniteDifferenceJacobian{newton.fd_b}};
    nonlinear::NewtonResult result;
    try {
      result = nonlinear::newton_solve(f, mode, newton, cfg.solver.gmres, precondition, h);
    } catch (const nonlinear::NonFiniteResidual& e) {
      throw SimulationError("step " + std::to_string(step) + ": " + e.what());
    } catch (const std::domain_error& e) {
      throw SimulationError("step " + std::to_string(step) + ": " + e.what());
    }

    StepRecord record{step, std::move(result.report), false};
    record.failed = !record.report.converged;
    run.residual_calls += record.report.residual_calls;
    if (record.failed) ++run.failed_steps;
    h = std::move(result.h);
    if (progress) progress(record);
    run.steps.push_back(std::move(record));
    if (run.steps.back().failed && cfg.on_failure == FailurePolicy::Abort) throw NonConvergenceError(step);

    const bool periodic = cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0;
    if (periodic || step == cfg.n_steps) run.snapshots.push_back({step, h});
  }
  run.final_heads = h;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace gwnk::sim
