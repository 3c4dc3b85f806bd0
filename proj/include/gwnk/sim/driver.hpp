#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gwnk/nonlinear/newton.hpp"
#include "gwnk/sim/config.hpp"
#include "gwnk/sim/scenario.hpp"

namespace gwnk::sim {

struct StepRecord {
  std::size_t step = 0;
  nonlinear::ConvergenceReport report;
  bool failed = false;
};

struct Snapshot {
  std::size_t step = 0;
  Vector heads;
};

struct RunArtifacts {
  std::string scenario;
  Method method = Method::JFNK;
  bool line_search = false;
  double dt = 1.0;
  NodeTable nodes;
  std::vector<Snapshot> snapshots;  // step 0 first, final state last
  Vector final_heads;
  std::vector<StepRecord> steps;
  std::size_t residual_calls = 0;
  std::size_t failed_steps = 0;
  double wall_seconds = 0.0;
};

/// Newton failed on a step and the policy is abort.
class NonConvergenceError : public std::runtime_error {
 public:
  explicit NonConvergenceError(std::size_t step)
      : std::runtime_error("Newton iteration did not converge at step " + std::to_string(step)), step_(step) {}
  [[nodiscard]] std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Non-finite heads or residuals during a step.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ProgressFn = std::function<void(const StepRecord&)>;

/**
 * Marches n_steps time steps, warm-starting each Newton solve from the
 * previous heads. Snapshots are kept at step 0, every snapshot_every steps
 * and at the final step.
 */
RunArtifacts run_simulation(const ScenarioConfig& cfg, const ProgressFn& progress = {});

/// Same, starting from the given heads instead of the configured h0.
RunArtifacts run_simulation(const ScenarioConfig& cfg, std::span<const double> initial_heads,
                            const ProgressFn& progress = {});

}  // namespace gwnk::sim
