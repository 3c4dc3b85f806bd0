#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "gwnk/krylov/csr_matrix.hpp"
#include "gwnk/models/hydraulics.hpp"

namespace gwnk::models {

using krylov::Vector;

enum class Side { Left, Right, Bottom, Top };

/**
 * @brief Node-centred rectangular grid for the single-layer model.
 *
 * Node (i, j), 0-based, has index j * nx + i and sits at (i dx, j dy).
 * Boundary nodes own half (edge) or quarter (corner) control volumes.
 * A node with a finite dirichlet value is a fixed-head node; all other
 * boundary edges carry the per-side inflow in side_flux (L^2/T per unit
 * length, 0 = no flow).
 */
struct StructuredGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  std::vector<double> dirichlet;  // NaN where the head is free
  std::array<double, 4> side_flux{0.0, 0.0, 0.0, 0.0};

  static StructuredGrid make(std::size_t nx, std::size_t ny, double dx, double dy);
  void fix_side(Side side, double head);

  [[nodiscard]] std::size_t size() const { return nx * ny; }
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  [[nodiscard]] bool is_fixed(std::size_t node) const;
  [[nodiscard]] double control_area(std::size_t node) const;
  void validate() const;
};

struct FdProblem {
  StructuredGrid grid;
  LayerParams layer;
  double dt = 1.0;
  SmoothingParams sm;
};

/**
 * Backward-Euler residual, per unit area:
 * F_i = S(h_i)(h_i - h_old_i)/dt - (1/w_i) sum_f T_f (h_nb - h_i) len_f/dist_f - q_i.
 * Face T is the mean of the two nodal values. Fixed-head rows are h_i - h_b.
 */
void fd_residual(const FdProblem& p, std::span<const double> h_new, std::span<const double> h_old,
                 std::span<double> out);
Vector fd_residual(const FdProblem& p, std::span<const double> h_new, std::span<const double> h_old);

krylov::CsrMatrix fd_jacobian(const FdProblem& p, std::span<const double> h_new, std::span<const double> h_old);

}  // namespace gwnk::models
