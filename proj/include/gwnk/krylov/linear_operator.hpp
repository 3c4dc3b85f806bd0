#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <span>

#include "gwnk/krylov/csr_matrix.hpp"

namespace gwnk::krylov {

/**
 * @brief Abstract action v -> Jv of dimension n.
 *
 * Realized either by an assembled CsrMatrix or by any callable (the
 * finite-difference product in the Jacobian-free path). Every apply()
 * bumps application_count().
 */
class LinearOperator {
 public:
  using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

  LinearOperator(std::size_t dimension, ApplyFn apply);

  /// Wraps a matrix by reference; the matrix must outlive the operator.
  static LinearOperator from_matrix(const CsrMatrix& a);

  LinearOperator(const LinearOperator& other);
  LinearOperator& operator=(const LinearOperator&) = delete;

  void apply(std::span<const double> x, std::span<double> y) const;
  [[nodiscard]] Vector apply(std::span<const double> x) const;

  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  [[nodiscard]] std::size_t application_count() const { return count_.load(); }

 private:
  std::size_t dimension_;
  ApplyFn apply_;
  mutable std::atomic<std::size_t> count_{0};
};

}  // namespace gwnk::krylov
