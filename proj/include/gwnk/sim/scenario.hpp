#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gwnk/krylov/csr_matrix.hpp"
#include "gwnk/models/fd_model.hpp"
#include "gwnk/models/fe_model.hpp"
#include "gwnk/sim/config.hpp"

namespace gwnk::sim {

using krylov::Vector;

/// Row metadata for head output, in unknown order.
struct NodeTable {
  std::vector<std::size_t> node_id;  // 1-based within its layer
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::size_t> layer;  // 1 = top

  [[nodiscard]] std::size_t size() const { return node_id.size(); }
};

/// One backward-Euler or Crank-Nicolson step with h_old fixed.
struct StepSystem {
  std::function<void(std::span<const double>, std::span<double>)> residual;
  std::function<krylov::CsrMatrix(std::span<const double>)> jacobian;
};

/// Discrete model built from a config: single-layer FD or two-layer FE.
class Scenario {
 public:
  explicit Scenario(const ScenarioConfig& cfg);

  [[nodiscard]] std::size_t unknowns() const { return nodes_.size(); }
  [[nodiscard]] const NodeTable& nodes() const { return nodes_; }
  [[nodiscard]] Vector initial_heads() const;
  [[nodiscard]] StepSystem make_step(std::span<const double> h_old) const;

  /// Sum over nodes of area times smoothed storage, zero at the aquifer base.
  [[nodiscard]] double total_storage(std::span<const double> h) const;

  [[nodiscard]] const std::optional<models::FdProblem>& fd() const { return fd_; }
  [[nodiscard]] const std::optional<models::FeProblem>& fe() const { return fe_; }

 private:
  std::optional<models::FdProblem> fd_;
  std::optional<models::FeProblem> fe_;
  Vector h0_;
  NodeTable nodes_;
};

}  // namespace gwnk::sim
