#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "gwnk/krylov/csr_matrix.hpp"
#include "gwnk/krylov/gmres.hpp"
#include "gwnk/nonlinear/residual_function.hpp"
#include "gwnk/nonlinear/settings.hpp"

namespace gwnk::nonlinear {

/// Newton-Krylov: the Jacobian is assembled at every iterate.
struct ExactJacobian {
  std::function<krylov::CsrMatrix(std::span<const double>)> assemble;
};

/// Jacobian-free: products come from one-sided residual differences.
struct FiniteDifferenceJacobian {
  double b = 1e-6;
};

using JacobianMode = std::variant<ExactJacobian, FiniteDifferenceJacobian>;

struct IterationRecord {
  double residual_norm = 0.0;  // ||F(h_k)||_2
  double step_norm = 0.0;      // ||dh_k|| in the configured norm
  double eta = 0.0;
  double lambda = 1.0;
  std::size_t krylov_inner_iterations = 0;
  bool krylov_converged = false;
  std::size_t ls_trials = 0;
  std::size_t slope_products = 0;  // extra F calls for the Armijo slope
  bool ls_exhausted = false;       // no trial met Armijo; best trial taken
  bool non_descent = false;
  double merit_before = 0.0;
  double merit_after = 0.0;  // NaN when the step was not evaluated
  double slope = 0.0;        // F^T J dh, NaN when not computed
  std::size_t residual_calls = 0;
};

struct ConvergenceReport {
  std::size_t newton_iterations = 0;
  std::vector<IterationRecord> per_iteration;
  std::size_t residual_calls = 0;
  bool converged = false;
};

struct NewtonResult {
  Vector h;
  ConvergenceReport report;
};

/**
 * @brief Inexact Newton with GMRES inner solves and optional backtracking.
 *
 * Iterates J dh = -F, h += lambda dh until ||dh|| <= tau_h. The GMRES
 * tolerance at iteration k is max(eta_k, gmres.tolerance). In exact mode
 * @p precondition enables ILU(0) of the assembled Jacobian; the
 * finite-difference mode rejects it.
 *
 * Throws NonFiniteResidual if F(h_k) is not finite. If max_newton is reached
 * the iterate with the smallest ||F|| is returned and converged is false.
 */
NewtonResult newton_solve(const ResidualFunction& f, const JacobianMode& mode, const NewtonSettings& s,
                          const krylov::GmresSettings& gmres, bool precondition, std::span<const double> h0);

}  // namespace gwnk::nonlinear
