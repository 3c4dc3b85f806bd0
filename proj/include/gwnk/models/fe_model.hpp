#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gwnk/krylov/csr_matrix.hpp"
#include "gwnk/models/fe_mesh.hpp"
#include "gwnk/models/hydraulics.hpp"

namespace gwnk::models {

using krylov::Vector;

struct PumpSpec {
  std::size_t layer = 1;  // 1 = top
  std::size_t cell = 1;   // 1-based
  double rate = 0.0;      // L^3/T, negative for extraction
};

/// Two aquifer layers separated by an aquitard; heads are layer-major.
struct FeProblem {
  FeMesh mesh;
  std::vector<LayerParams> layers;  // top first
  AquitardParams aquitard;
  std::vector<PumpSpec> pumps;
  double dt = 1.0;
  SmoothingParams sm;

  [[nodiscard]] std::size_t unknowns() const { return mesh.node_count() * layers.size(); }
  /// Per-area pumping rate for every unknown (quarter shares / nodal area).
  [[nodiscard]] Vector nodal_pumping() const;
  void validate() const;
};

/**
 * @brief Crank-Nicolson residual of one time step, per unit area.
 *
 * F_i = [C(h_new) - C(h_old)]/dt + (1/2w_i) sum_e (T_e' K^e h_new + T_e K^e h_old)_i
 *       + (L_new + L_old)/2 - (Q_new + Q_old)/2
 * with C the storage content (see storage_content), L = +V in the top layer and -V below, and Q the
 * storage-limited sink. The old-level part is computed once at construction.
 */
class FeStep {
 public:
  FeStep(const FeProblem& problem, std::span<const double> h_old);

  void residual(std::span<const double> h_new, std::span<double> out) const;
  [[nodiscard]] Vector residual(std::span<const double> h_new) const;
  [[nodiscard]] krylov::CsrMatrix jacobian(std::span<const double> h_new) const;

  /// Leakage and sink contributions alone, for diagnostics and tests.
  [[nodiscard]] Vector leakage_terms(std::span<const double> h) const;

 private:
  void current_level(std::span<const double> h, std::span<double> out) const;

  const FeProblem& p_;
  Vector q_;
  Vector old_part_;
};

Vector fe_residual(const FeProblem& p, std::span<const double> h_new, std::span<const double> h_old);
krylov::CsrMatrix fe_jacobian(const FeProblem& p, std::span<const double> h_new, std::span<const double> h_old);

}  // namespace gwnk::models
