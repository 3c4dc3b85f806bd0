#include "gwnk/nonlinear/newton.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "gwnk/krylov/ilu0.hpp"
#include "gwnk/nonlinear/forcing.hpp"
#include "gwnk/nonlinear/jacobian_free.hpp"
#include "gwnk/nonlinear/line_search.hpp"

namespace gwnk::nonlinear {

namespace {

double step_size(std::span<const double> d, StepNorm norm) {
  return norm == StepNorm::Max ? krylov::norm_inf(d) : krylov::norm2(d);
}

}  // namespace

NewtonResult newton_solve(const ResidualFunction& f, const JacobianMode& mode, const NewtonSettings& s,
                          const krylov::GmresSettings& gmres, bool precondition, std::span<const double> h0) {
  s.validate();
  gmres.validate();
  const std::size_t n = f.dimension();
  if (h0.size() != n) throw krylov::ContractViolation("newton_solve: h0 length does not match residual dimension");
  if (first_non_finite(h0) < n) throw std::invalid_argument("newton_solve: initial iterate is not finite");
  const bool free_mode = std::holds_alternative<FiniteDifferenceJacobian>(mode);
  if (free_mode && precondition) {
    throw std::invalid_argument("newton_solve: the Jacobian-free mode runs without a preconditioner");
  }

  NewtonResult result;
  auto& report = result.report;
  Vector h(h0.begin(), h0.end());
  Vector best_h = h;
  double best_norm = std::numeric_limits<double>::infinity();
  double prev_norm = 0.0;
  const std::size_t calls_at_start = f.call_count();

  for (std::size_t k = 0; k < s.max_newton; ++k) {
    IterationRecord rec;
    const std::size_t calls_before = f.call_count();

    const Vector fh = f.eval(h);
    if (const auto bad = first_non_finite(fh); bad < n) throw NonFiniteResidual(bad, "newton_solve");
    const double norm_f = krylov::norm2(fh);
    rec.residual_norm = norm_f;
    rec.merit_before = 0.5 * norm_f * norm_f;
    if (norm_f < best_norm) {
      best_norm = norm_f;
      best_h = h;
    }

    rec.eta = forcing_term(k, norm_f, prev_norm, s.gamma_ini, s.r_threshold);
    krylov::GmresSettings inner = gmres;
    inner.tolerance = std::max(rec.eta, gmres.tolerance);

    Vector rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -fh[i];

    std::optional<krylov::CsrMatrix> jac;
    std::optional<krylov::LinearOperator> op;
    std::optional<krylov::IluFactors> ilu;
    if (const auto* exact = std::get_if<ExactJacobian>(&mode)) {
      jac = exact->assemble(h);
      if (jac->n_rows != n || jac->n_cols != n) throw krylov::ContractViolation("newton_solve: Jacobian has wrong shape");
      op.emplace(krylov::LinearOperator::from_matrix(*jac));
      if (precondition) ilu = krylov::ilu0_factorize(*jac);
    } else {
      op.emplace(jacobian_free_operator(f, h, fh, std::get<FiniteDifferenceJacobian>(mode).b));
    }

    const auto lin = krylov::gmres_solve(*op, rhs, {}, inner, ilu ? &*ilu : nullptr);
    const Vector& delta = lin.solution;
    rec.krylov_inner_iterations = lin.inner_iterations;
    rec.krylov_converged = lin.converged;
    rec.step_norm = step_size(delta, s.step_norm);
    rec.merit_after = std::numeric_limits<double>::quiet_NaN();
    rec.slope = std::numeric_limits<double>::quiet_NaN();

    if (rec.step_norm <= s.tau_h) {
      for (std::size_t i = 0; i < n; ++i) h[i] += delta[i];
      rec.residual_calls = f.call_count() - calls_before;
      report.per_iteration.push_back(rec);
      report.converged = true;
      break;
    }

    if (s.use_line_search && s.max_ls > 0) {
      Vector jd;
      if (jac) {
        jd = krylov::spmv(*jac, delta);
      } else {
        jd = op->apply(delta);
        rec.slope_products = 1;
      }
      rec.slope = krylov::dot(fh, jd);
      auto ls = backtracking_line_search(f, h, delta, rec.merit_before, rec.slope, s);
      rec.lambda = ls.lambda;
      rec.ls_trials = ls.trials;
      rec.ls_exhausted = ls.trials > 0 && !ls.armijo_satisfied;
      rec.non_descent = ls.non_descent;
      rec.merit_after = ls.merit;
      h = std::move(ls.h_new);
    } else {
      for (std::size_t i = 0; i < n; ++i) h[i] += delta[i];
    }

    prev_norm = norm_f;
    rec.residual_calls = f.call_count() - calls_before;
    report.per_iteration.push_back(rec);
  }

  report.newton_iterations = report.per_iteration.size();
  report.residual_calls = f.call_count() - calls_at_start;
  result.h = report.converged ? std::move(h) : std::move(best_h);
  return result;
}

}  // namespace gwnk::nonlinear
