#include "gwnk/nonlinear/forcing.hpp"

#include <algorithm>

namespace gwnk::nonlinear {

double forcing_term(std::size_t k, double norm_f, double norm_f_prev, double gamma_ini, double r_threshold) {
  if (k == 0 || norm_f >= r_threshold) return gamma_ini;
  if (norm_f_prev <= 0.0) return gamma_ini;
  const double ratio = norm_f / norm_f_prev;
  // ratio == 0 only when F vanished exactly; keep eta strictly positive.
  if (ratio <= 0.0) return gamma_ini;
  return std::min(gamma_ini, ratio);
}

}  // namespace gwnk::nonlinear
