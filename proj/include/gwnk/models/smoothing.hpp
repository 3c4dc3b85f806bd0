#pragma once

namespace gwnk::models {

struct SmoothingParams {
  double eps_s = 1e-4;  // CHKS parameter
  double beta = 10.0;   // sigmoid sharpness

  void validate() const;
};

/// CHKS approximation of max(x, 0): (x + sqrt(x^2 + eps)) / 2.
double chks_max(double x, double eps_s);
double chks_max_derivative(double x, double eps_s);

/// Logistic approximation of the unit step, 1 / (1 + exp(-beta x)).
double sigmoid_step(double x, double beta);
double sigmoid_step_derivative(double x, double beta);

}  // namespace gwnk::models
