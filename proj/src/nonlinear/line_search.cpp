#include "gwnk/nonlinear/line_search.hpp"

#include <cmath>
#include <limits>

namespace gwnk::nonlinear {

double merit(std::span<const double> f) { return 0.5 * krylov::dot(f, f); }

LineSearchResult backtracking_line_search(const ResidualFunction& f, std::span<const double> h,
                                          std::span<const double> delta, double f_h, double grad_dot_delta,
                                          const NewtonSettings& s) {
  const std::size_t n = h.size();
  if (delta.size() != n) throw krylov::ContractViolation("backtracking_line_search: length mismatch");

  auto step = [&](double lambda) {
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = h[i] + lambda * delta[i];
    return out;
  };

  LineSearchResult res;
  if (grad_dot_delta >= 0.0 || s.max_ls == 0) {
    res.non_descent = grad_dot_delta >= 0.0;
    res.h_new = step(1.0);
    res.merit = std::numeric_limits<double>::quiet_NaN();
    return res;
  }

  LineSearchResult best;
  best.merit = std::numeric_limits<double>::infinity();
  double lambda = 1.0;
  for (std::size_t trial = 1; trial <= s.max_ls; ++trial) {
    Vector h_trial = step(lambda);
    Vector f_trial = f.eval(h_trial);
    const double m = std::isfinite(krylov::norm_inf(f_trial)) ? merit(f_trial)
                                                               : std::numeric_limits<double>::infinity();
    if (m <= f_h + s.ls_alpha * lambda * grad_dot_delta) {
      res.lambda = lambda;
      res.h_new = std::move(h_trial);
      res.f_new = std::move(f_trial);
      res.merit = m;
      res.trials = trial;
      res.armijo_satisfied = true;
      return res;
    }
    if (m < best.merit || best.h_new.empty()) {
      best.lambda = lambda;
      best.h_new = std::move(h_trial);
      best.f_new = std::move(f_trial);
      best.merit = m;
    }
    lambda *= s.ls_rho;
  }
  best.trials = s.max_ls;
  best.armijo_satisfied = false;
  return best;
}

}  // namespace gwnk::nonlinear
