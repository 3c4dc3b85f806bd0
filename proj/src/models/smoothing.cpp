#include "gwnk/models/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace gwnk::models {

void SmoothingParams::validate() const {
  if (!(eps_s > 0.0)) throw std::invalid_argument("smoothing: eps_s must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("smoothing: beta must be > 0");
}

// Written as max(x,0) + eps / (2 (s + |x|)) to avoid cancellation for x << 0.
double chks_max(double x, double eps_s) {
  const double s = std::sqrt(x * x + eps_s);
  const double gap = eps_s / (2.0 * (s + std::abs(x)));
  return x > 0.0 ? x + gap : gap;
}

double chks_max_derivative(double x, double eps_s) { return 0.5 * (1.0 + x / std::sqrt(x * x + eps_s)); }

double sigmoid_step(double x, double beta) {
  const double t = beta * x;
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double sigmoid_step_derivative(double x, double beta) {
  const double s = sigmoid_step(x, beta);
  return beta * s * (1.0 - s);
}

}  // namespace gwnk::models
