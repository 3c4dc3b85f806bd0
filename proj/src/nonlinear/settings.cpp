#include "gwnk/nonlinear/settings.hpp"

#include <stdexcept>

namespace gwnk::nonlinear {

void NewtonSettings::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(std::string("NewtonSettings: ") + what); };
  if (!(tau_h > 0.0)) fail("tau_h must be > 0");
  if (max_newton < 1) fail("max_newton must be >= 1");
  if (!(gamma_ini > 0.0 && gamma_ini < 1.0)) fail("gamma_ini must lie in (0, 1)");
  if (!(r_threshold > 0.0)) fail("r_threshold must be > 0");
  if (!(ls_alpha > 0.0 && ls_alpha < 1.0)) fail("ls_alpha must lie in (0, 1)");
  if (!(ls_rho > 0.0 && ls_rho < 1.0)) fail("ls_rho must lie in (0, 1)");
  if (!(fd_b > 0.0)) fail("fd_b must be > 0");
}

}  // namespace gwnk::nonlinear
