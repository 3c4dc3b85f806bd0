#include "gwnk/krylov/gmres.hpp"

#include <algorithm>
#include <cmath>

namespace gwnk::krylov {

namespace {

constexpr double kBreakdown = 1e-14;
const double kReorthogonalize = 1.0 / std::sqrt(2.0);

struct Givens {
  double c = 1.0;
  double s = 0.0;

  void apply(double& a, double& b) const {
    const double t = c * a + s * b;
    b = -s * a + c * b;
    a = t;
  }
  void apply_transposed(double& a, double& b) const {
    const double t = c * a - s * b;
    b = s * a + c * b;
    a = t;
  }
  static Givens annihilate(double a, double b) {
    if (b == 0.0) return {1.0, 0.0};
    const double r = std::hypot(a, b);
    return {a / r, b / r};
  }
};

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

void GmresSettings::validate() const {
  if (restart < 1) throw ContractViolation("GmresSettings: restart must be >= 1");
  if (!(tolerance > 0.0)) throw ContractViolation("GmresSettings: tolerance must be > 0");
  if (max_restarts < 1) throw ContractViolation("GmresSettings: max_restarts must be >= 1");
}

GmresOutcome gmres_solve(const LinearOperator& op, std::span<const double> rhs, std::span<const double> x0,
                         const GmresSettings& settings, const IluFactors* precond) {
  settings.validate();
  const std::size_t n = op.dimension();
  if (rhs.size() != n) throw ContractViolation("gmres_solve: rhs length does not match operator dimension");
  if (!x0.empty() && x0.size() != n) throw ContractViolation("gmres_solve: x0 length does not match operator dimension");
  if (precond != nullptr && precond->lu.n_rows != n) throw ContractViolation("gmres_solve: preconditioner dimension mismatch");

  GmresOutcome out;
  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0) {
    out.solution.assign(n, 0.0);
    out.converged = true;
    out.residual_history.push_back(0.0);
    return out;
  }

  Vector x = x0.empty() ? Vector(n, 0.0) : Vector(x0.begin(), x0.end());
  Vector r(rhs.begin(), rhs.end());
  if (!x0.empty()) {
    const Vector ax = op.apply(x);
    for (std::size_t i = 0; i < n; ++i) r[i] -= ax[i];
  }

  const std::size_t m = settings.restart;
  std::vector<Vector> basis(m + 1, Vector(n));
  std::vector<Vector> hess(m, Vector(m + 1, 0.0));  // column-major, rotated in place
  std::vector<Givens> rotations(m);
  Vector g(m + 1);
  Vector z(n);
  Vector w(n);

  double beta = norm2(r);
  out.achieved_relative_residual = beta / rhs_norm;

  for (std::size_t cycle = 0; cycle < settings.max_restarts; ++cycle) {
    out.restarts = cycle;
    out.residual_history.push_back(beta / rhs_norm);
    if (beta / rhs_norm <= settings.tolerance) {
      out.converged = true;
      break;
    }

    for (std::size_t i = 0; i < n; ++i) basis[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    std::size_t k = 0;  // columns completed in this cycle
    bool done = false;
    while (k < m) {
      const std::size_t j = k;
      auto& col = hess[j];
      std::fill(col.begin(), col.end(), 0.0);

      if (precond != nullptr) {
        ilu_apply(*precond, basis[j], z);
        op.apply(z, w);
      } else {
        op.apply(basis[j], w);
      }
      ++out.inner_iterations;

      const double norm_before = norm2(w);
      for (std::size_t i = 0; i <= j; ++i) {
        const double hij = dot(w, basis[i]);
        col[i] = hij;
        axpy(-hij, basis[i], w);
      }
      double norm_after = norm2(w);
      if (norm_after < kReorthogonalize * norm_before) {
        for (std::size_t i = 0; i <= j; ++i) {
          const double corr = dot(w, basis[i]);
          col[i] += corr;
          axpy(-corr, basis[i], w);
        }
        norm_after = norm2(w);
      }
      col[j + 1] = norm_after;
      const bool breakdown = norm_after <= kBreakdown * std::max(norm_before, 1e-300);
      if (!breakdown) {
        for (std::size_t i = 0; i < n; ++i) basis[j + 1][i] = w[i] / norm_after;
      }

      for (std::size_t i = 0; i < j; ++i) rotations[i].apply(col[i], col[i + 1]);
      rotations[j] = Givens::annihilate(col[j], col[j + 1]);
      rotations[j].apply(col[j], col[j + 1]);
      rotations[j].apply(g[j], g[j + 1]);
      k = j + 1;

      if (std::abs(col[j]) <= kBreakdown * std::max(norm_before, 1e-300)) {
        // Singular least-squares block: the new direction adds nothing.
        out.achieved_relative_residual = std::hypot(g[j], g[k]) / rhs_norm;
        out.residual_history.push_back(out.achieved_relative_residual);
        out.breakdown = true;
        done = true;
        break;
      }
      const double rel = std::abs(g[k]) / rhs_norm;
      out.residual_history.push_back(rel);
      out.achieved_relative_residual = rel;
      if (rel <= settings.tolerance) {
        out.converged = true;
        done = true;
        break;
      }
      if (breakdown) {
        out.breakdown = true;
        done = true;
        break;
      }
      if (out.inner_iterations >= m * settings.max_restarts) {
        done = true;
        break;
      }
    }

    // Back substitution on the rotated (upper triangular) Hessenberg block.
    Vector y(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
      double s = g[i];
      for (std::size_t l = i + 1; l < k; ++l) s -= hess[l][i] * y[l];
      const double diag = hess[i][i];
      y[i] = diag != 0.0 ? s / diag : 0.0;
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < k; ++i) axpy(y[i], basis[i], w);
    if (precond != nullptr) {
      ilu_apply(*precond, w, z);
      axpy(1.0, z, x);
    } else {
      axpy(1.0, w, x);
    }

    if (done) break;

    // r = V_{k+1} * Omega^T * (0, ..., 0, g_k)
    Vector coeff(k + 1, 0.0);
    coeff[k] = g[k];
    for (std::size_t i = k; i-- > 0;) rotations[i].apply_transposed(coeff[i], coeff[i + 1]);
    std::fill(r.begin(), r.end(), 0.0);
    for (std::size_t i = 0; i <= k; ++i) axpy(coeff[i], basis[i], r);
    beta = norm2(r);
    out.restarts = cycle + 1;
  }

  out.solution = std::move(x);
  return out;
}

}  // namespace gwnk::krylov
