#pragma once

#include <cstddef>

namespace gwnk::nonlinear {

enum class StepNorm { L2, Max };

struct NewtonSettings {
  double tau_h = 1e-4;  // stop once ||dh|| <= tau_h (head units)
  std::size_t max_newton = 50;
  double gamma_ini = 0.99;
  double r_threshold = 0.625;
  double ls_alpha = 1e-4;
  double ls_rho = 0.5;
  std::size_t max_ls = 3;
  bool use_line_search = true;
  double fd_b = 1e-6;
  StepNorm step_norm = StepNorm::L2;

  void validate() const;
};

}  // namespace gwnk::nonlinear
