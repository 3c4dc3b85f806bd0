#include "gwnk/krylov/linear_operator.hpp"

#include <string>

namespace gwnk::krylov {

LinearOperator::LinearOperator(std::size_t dimension, ApplyFn apply)
    : dimension_(dimension), apply_(std::move(apply)) {
  if (!apply_) throw ContractViolation("LinearOperator: empty apply function");
}

LinearOperator::LinearOperator(const LinearOperator& other)
    : dimension_(other.dimension_), apply_(other.apply_), count_(other.count_.load()) {}

LinearOperator LinearOperator::from_matrix(const CsrMatrix& a) {
  if (a.n_rows != a.n_cols) throw ContractViolation("LinearOperator::from_matrix: matrix is not square");
  return LinearOperator(a.n_rows, [&a](std::span<const double> x, std::span<double> y) { spmv(a, x, y); });
}

void LinearOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dimension_ || y.size() != dimension_) {
    throw ContractViolation("LinearOperator::apply: expected vectors of length " + std::to_string(dimension_));
  }
  ++count_;
  apply_(x, y);
}

Vector LinearOperator::apply(std::span<const double> x) const {
  Vector y(dimension_);
  apply(x, y);
  return y;
}

}  // namespace gwnk::krylov
