#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gwnk/krylov/csr_matrix.hpp"
#include "gwnk/krylov/ilu0.hpp"
#include "gwnk/krylov/linear_operator.hpp"

namespace gwnk::krylov {

struct GmresSettings {
  std::size_t restart = 20;
  double tolerance = 1e-6;  // on ||rhs - A x|| / ||rhs||
  std::size_t max_restarts = 500;

  void validate() const;
};

struct GmresOutcome {
  Vector solution;
  double achieved_relative_residual = 0.0;
  std::size_t inner_iterations = 0;
  std::size_t restarts = 0;
  bool converged = false;
  bool breakdown = false;
  /// Relative residual after every inner iteration, starting with the
  /// initial residual of each cycle.
  std::vector<double> residual_history;
};

/**
 * @brief Restarted GMRES(p) with Arnoldi/modified Gram-Schmidt.
 *
 * Right preconditioning with ILU(0) when @p precond is given, so the
 * monitored residual is the unpreconditioned one. An empty @p x0 means the
 * zero initial guess and costs no operator application. Between restarts the
 * residual is recovered from the Arnoldi relation, so the operator is applied
 * exactly once per Krylov basis vector.
 */
GmresOutcome gmres_solve(const LinearOperator& op, std::span<const double> rhs,
                         std::span<const double> x0, const GmresSettings& settings,
                         const IluFactors* precond = nullptr);

}  // namespace gwnk::krylov
