#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace gwnk::models {

using Matrix4 = std::array<std::array<double, 4>, 4>;

struct Point {
  double x;
  double y;
};

/// Integral of grad(phi_i) . grad(phi_j) over a bilinear quad (2x2 Gauss).
/// Corners must be counterclockwise; throws on a non-positive Jacobian.
Matrix4 element_stiffness(const std::array<Point, 4>& corners);

/// Element area by the shoelace formula.
double quad_area(const std::array<Point, 4>& corners);

/**
 * @brief Quadrilateral mesh of a rectangular cell grid.
 *
 * Cells and nodes are numbered 1-based row-major in the public helpers;
 * storage is 0-based. Cell c of a W-wide grid has corners
 * {n, n+1, n+W+1, n+W+2} with n = (row-1)(W+1) + col.
 */
struct FeMesh {
  std::size_t cells_x = 0;
  std::size_t cells_y = 0;
  std::vector<Point> nodes;
  std::vector<std::array<std::size_t, 4>> elements;  // counterclockwise, 0-based
  std::vector<Matrix4> stiffness;
  std::vector<double> lumped_area;

  static FeMesh rectangular(std::size_t cells_x, std::size_t cells_y, double dx, double dy);

  [[nodiscard]] std::size_t node_count() const { return nodes.size(); }
  /// 1-based corner node numbers of 1-based cell c, ascending.
  [[nodiscard]] std::array<std::size_t, 4> cell_corner_nodes(std::size_t cell) const;
};

/// Per-node sum of element area / 4.
std::vector<double> lumped_storage_weights(const FeMesh& mesh);

}  // namespace gwnk::models
