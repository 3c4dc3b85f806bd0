#include "gwnk/nonlinear/jacobian_free.hpp"

#include <cmath>
#include <stdexcept>

namespace gwnk::nonlinear {

double perturbation_epsilon(std::span<const double> h, std::span<const double> v, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("perturbation_epsilon: b must be positive");
  if (h.size() != v.size()) throw krylov::ContractViolation("perturbation_epsilon: length mismatch");
  const double v2 = krylov::dot(v, v);
  if (v2 == 0.0) throw std::invalid_argument("perturbation_epsilon: zero direction");
  double sum = 0.0;
  for (double hi : h) sum += b * std::abs(hi) + b;
  return sum / (static_cast<double>(h.size()) * v2);
}

Vector jv_product_fd(const ResidualFunction& f, std::span<const double> h, std::span<const double> fh,
                     std::span<const double> v, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("jv_product_fd: eps must be positive");
  const std::size_t n = f.dimension();
  if (h.size() != n || fh.size() != n || v.size() != n) {
    throw krylov::ContractViolation("jv_product_fd: dimension mismatch");
  }
  Vector shifted(n);
  for (std::size_t i = 0; i < n; ++i) shifted[i] = h[i] + eps * v[i];
  Vector out = f.eval(shifted);
  if (const auto bad = first_non_finite(out); bad < n) throw NonFiniteResidual(bad, "jv_product_fd");
  for (std::size_t i = 0; i < n; ++i) out[i] = (out[i] - fh[i]) / eps;
  return out;
}

krylov::LinearOperator jacobian_free_operator(const ResidualFunction& f, std::span<const double> h,
                                              std::span<const double> fh, double b) {
  const std::size_t n = f.dimension();
  if (h.size() != n || fh.size() != n) throw krylov::ContractViolation("jacobian_free_operator: dimension mismatch");
  return krylov::LinearOperator(n, [&f, h, fh, b, n](std::span<const double> v, std::span<double> y) {
    const double scale = krylov::norm2(v);
    if (scale == 0.0) {
      std::fill(y.begin(), y.end(), 0.0);
      return;
    }
    Vector unit(n);
    for (std::size_t i = 0; i < n; ++i) unit[i] = v[i] / scale;
    const double eps = perturbation_epsilon(h, unit, b);
    const Vector jv = jv_product_fd(f, h, fh, unit, eps);
    for (std::size_t i = 0; i < n; ++i) y[i] = scale * jv[i];
  });
}

}  // namespace gwnk::nonlinear
