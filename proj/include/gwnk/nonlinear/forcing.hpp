#pragma once

#include <cstddef>

namespace gwnk::nonlinear {

/// Inexact-Newton forcing term: loose (gamma_ini) while ||F_k|| >= r, then
/// min(gamma_ini, ||F_k|| / ||F_{k-1}||). Iteration 0 always gets gamma_ini.
double forcing_term(std::size_t k, double norm_f, double norm_f_prev, double gamma_ini, double r_threshold);

}  // namespace gwnk::nonlinear
