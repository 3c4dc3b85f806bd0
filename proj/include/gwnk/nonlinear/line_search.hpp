#pragma once

#include <cstddef>
#include <span>

#include "gwnk/nonlinear/residual_function.hpp"
#include "gwnk/nonlinear/settings.hpp"

namespace gwnk::nonlinear {

struct LineSearchResult {
  double lambda = 1.0;
  Vector h_new;
  Vector f_new;        // F(h_new); empty when no trial was evaluated
  double merit = 0.0;  // 0.5 ||F(h_new)||^2, NaN when not evaluated
  std::size_t trials = 0;
  bool armijo_satisfied = false;
  bool non_descent = false;
};

/// Merit function f(h) = 0.5 ||F(h)||^2.
double merit(std::span<const double> f);

/**
 * @brief Backtracking search on the merit function.
 *
 * Tries lambda = 1, rho, rho^2, ... for at most max_ls trials and accepts the
 * first one with f(h + lambda d) <= f(h) + alpha lambda grad_dot_delta. If
 * every trial fails the one with the smallest merit is returned with
 * armijo_satisfied = false. A non-descent direction (grad_dot_delta >= 0) is
 * taken with lambda = 1 and no residual evaluation.
 */
LineSearchResult backtracking_line_search(const ResidualFunction& f, std::span<const double> h,
                                          std::span<const double> delta, double f_h, double grad_dot_delta,
                                          const NewtonSettings& s);

}  // namespace gwnk::nonlinear
