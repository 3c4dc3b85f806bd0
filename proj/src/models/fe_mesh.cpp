#include "gwnk/models/fe_mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gwnk::models {

Matrix4 element_stiffness(const std::array<Point, 4>& c) {
  // reference square [-1,1]^2, corners counterclockwise from (-1,-1)
  static constexpr double xi_n[4] = {-1.0, 1.0, 1.0, -1.0};
  static constexpr double eta_n[4] = {-1.0, -1.0, 1.0, 1.0};
  const double g = 1.0 / std::sqrt(3.0);

  Matrix4 k{};
  for (const double xi : {-g, g}) {
    for (const double eta : {-g, g}) {
      double dxi[4];
      double deta[4];
      for (int a = 0; a < 4; ++a) {
        dxi[a] = 0.25 * xi_n[a] * (1.0 + eta * eta_n[a]);
        deta[a] = 0.25 * eta_n[a] * (1.0 + xi * xi_n[a]);
      }
      double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;
      for (int a = 0; a < 4; ++a) {
        j11 += dxi[a] * c[a].x;
        j12 += dxi[a] * c[a].y;
        j21 += deta[a] * c[a].x;
        j22 += deta[a] * c[a].y;
      }
      const double det = j11 * j22 - j12 * j21;
      if (!(det > 0.0)) {
        throw std::invalid_argument("element_stiffness: non-positive Jacobian determinant " + std::to_string(det));
      }
      double gx[4];
      double gy[4];
      for (int a = 0; a < 4; ++a) {
        gx[a] = (j22 * dxi[a] - j12 * deta[a]) / det;
        gy[a] = (-j21 * dxi[a] + j11 * deta[a]) / det;
      }
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) k[a][b] += (gx[a] * gx[b] + gy[a] * gy[b]) * det;
      }
    }
  }
  return k;
}

double quad_area(const std::array<Point, 4>& c) {
  double twice = 0.0;
  for (int a = 0; a < 4; ++a) {
    const auto& p = c[a];
    const auto& q = c[(a + 1) % 4];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

FeMesh FeMesh::rectangular(std::size_t cells_x, std::size_t cells_y, double dx, double dy) {
  if (cells_x < 1 || cells_y < 1) throw std::invalid_argument("mesh: need at least one cell in each direction");
  if (!(dx > 0.0 && dy > 0.0)) throw std::invalid_argument("mesh: cell sizes must be > 0");
  FeMesh m;
  m.cells_x = cells_x;
  m.cells_y = cells_y;
  const std::size_t w = cells_x + 1;
  for (std::size_t r = 0; r <= cells_y; ++r) {
    for (std::size_t c = 0; c <= cells_x; ++c) {
      m.nodes.push_back({static_cast<double>(c) * dx, static_cast<double>(r) * dy});
    }
  }
  for (std::size_t r = 0; r < cells_y; ++r) {
    for (std::size_t c = 0; c < cells_x; ++c) {
      const std::size_t n = r * w + c;
      m.elements.push_back({n, n + 1, n + w + 1, n + w});
    }
  }
  for (const auto& e : m.elements) {
    m.stiffness.push_back(element_stiffness({m.nodes[e[0]], m.nodes[e[1]], m.nodes[e[2]], m.nodes[e[3]]}));
  }
  m.lumped_area = lumped_storage_weights(m);
  return m;
}

std::array<std::size_t, 4> FeMesh::cell_corner_nodes(std::size_t cell) const {
  if (cell < 1 || cell > cells_x * cells_y) {
    throw std::out_of_range("mesh: cell " + std::to_string(cell) + " outside 1.." + std::to_string(cells_x * cells_y));
  }
  const std::size_t row = (cell - 1) / cells_x + 1;
  const std::size_t col = (cell - 1) % cells_x + 1;
  const std::size_t n = (row - 1) * (cells_x + 1) + col;
  return {n, n + 1, n + cells_x + 1, n + cells_x + 2};
}

std::vector<double> lumped_storage_weights(const FeMesh& mesh) {
  std::vector<double> w(mesh.nodes.size(), 0.0);
  for (const auto& e : mesh.elements) {
    const double a = quad_area({mesh.nodes[e[0]], mesh.nodes[e[1]], mesh.nodes[e[2]], mesh.nodes[e[3]]});
    for (const auto n : e) w[n] += 0.25 * a;
  }
  return w;
}

}  // namespace gwnk::models
