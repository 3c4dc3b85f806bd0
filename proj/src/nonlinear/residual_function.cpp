#include "gwnk/nonlinear/residual_function.hpp"

#include <cmath>

namespace gwnk::nonlinear {

ResidualFunction::ResidualFunction(std::size_t dimension, EvalFn eval)
    : dimension_(dimension), eval_(std::move(eval)) {
  if (!eval_) throw krylov::ContractViolation("ResidualFunction: empty evaluation function");
}

void ResidualFunction::eval(std::span<const double> h, std::span<double> out) const {
  if (h.size() != dimension_ || out.size() != dimension_) {
    throw krylov::ContractViolation("ResidualFunction::eval: expected vectors of length " +
                                    std::to_string(dimension_));
  }
  ++calls_;
  eval_(h, out);
}

Vector ResidualFunction::eval(std::span<const double> h) const {
  Vector out(dimension_);
  eval(h, out);
  return out;
}

std::size_t first_non_finite(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return i;
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace gwnk::nonlinear
