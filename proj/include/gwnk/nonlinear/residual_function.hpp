#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "gwnk/krylov/csr_matrix.hpp"

namespace gwnk::nonlinear {

using krylov::Vector;

/// Raised when F(h) contains NaN/Inf; carries the first offending index.
class NonFiniteResidual : public std::runtime_error {
 public:
  NonFiniteResidual(std::size_t index, const std::string& where)
      : std::runtime_error(where + ": non-finite residual at index " + std::to_string(index)), index_(index) {}
  [[nodiscard]] std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/**
 * @brief Nonlinear residual F: R^n -> R^n with a call counter.
 *
 * The counter increments exactly once per evaluation. It is the quantity the
 * NK/JFNK cost comparison is built on, so every evaluation must go through
 * eval().
 */
class ResidualFunction {
 public:
  using EvalFn = std::function<void(std::span<const double>, std::span<double>)>;

  ResidualFunction(std::size_t dimension, EvalFn eval);
  ResidualFunction(const ResidualFunction&) = delete;
  ResidualFunction& operator=(const ResidualFunction&) = delete;

  void eval(std::span<const double> h, std::span<double> out) const;
  [[nodiscard]] Vector eval(std::span<const double> h) const;

  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  [[nodiscard]] std::size_t call_count() const { return calls_.load(); }

 private:
  std::size_t dimension_;
  EvalFn eval_;
  mutable std::atomic<std::size_t> calls_{0};
};

/// Index of the first non-finite entry, or npos.
std::size_t first_non_finite(std::span<const double> v);

}  // namespace gwnk::nonlinear
