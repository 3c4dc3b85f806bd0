#pragma once

#include <span>

#include "gwnk/krylov/linear_operator.hpp"
#include "gwnk/nonlinear/residual_function.hpp"

namespace gwnk::nonlinear {

/// Perturbation size for a directional difference:
///   eps = sum_i (b |h_i| + b) / (n ||v||^2)
/// Throws std::invalid_argument if ||v|| == 0 or b <= 0.
double perturbation_epsilon(std::span<const double> h, std::span<const double> v, double b);

/// One-sided difference (F(h + eps v) - F(h)) / eps. `fh` must already hold
/// F(h); exactly one new residual evaluation is made.
Vector jv_product_fd(const ResidualFunction& f, std::span<const double> h, std::span<const double> fh,
                     std::span<const double> v, double eps);

/**
 * @brief Matrix-free Jacobian action around a fixed base point.
 *
 * The direction is normalized before differencing and the product rescaled
 * afterwards, so the perturbation is always taken along a unit vector. A zero
 * direction returns zero without calling F. The base vectors are referenced,
 * not copied; they must outlive the operator.
 */
krylov::LinearOperator jacobian_free_operator(const ResidualFunction& f, std::span<const double> h,
                                              std::span<const double> fh, double b);

}  // namespace gwnk::nonlinear
