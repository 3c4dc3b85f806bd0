#include "gwnk/models/fd_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gwnk::models {

namespace {

constexpr double kFree = std::numeric_limits<double>::quiet_NaN();

double edge_factor(std::size_t k, std::size_t n) { return (k == 0 || k + 1 == n) ? 0.5 : 1.0; }

struct Face {
  std::size_t nb;
  double conductance;  // len / dist
};

// Up to four faces of node (i, j).
template <class Fn>
void for_each_face(const StructuredGrid& g, std::size_t i, std::size_t j, Fn&& fn) {
  const double cx = g.dy * edge_factor(j, g.ny) / g.dx;
  const double cy = g.dx * edge_factor(i, g.nx) / g.dy;
  if (i > 0) fn(Face{g.index(i - 1, j), cx});
  if (i + 1 < g.nx) fn(Face{g.index(i + 1, j), cx});
  if (j > 0) fn(Face{g.index(i, j - 1), cy});
  if (j + 1 < g.ny) fn(Face{g.index(i, j + 1), cy});
}

double boundary_inflow(const StructuredGrid& g, std::size_t i, std::size_t j) {
  double q = 0.0;
  if (i == 0) q += g.side_flux[0] * g.dy * edge_factor(j, g.ny);
  if (i + 1 == g.nx) q += g.side_flux[1] * g.dy * edge_factor(j, g.ny);
  if (j == 0) q += g.side_flux[2] * g.dx * edge_factor(i, g.nx);
  if (j + 1 == g.ny) q += g.side_flux[3] * g.dx * edge_factor(i, g.nx);
  return q;
}

void check_sizes(const FdProblem& p, std::span<const double> a, std::span<const double> b) {
  if (a.size() != p.grid.size() || b.size() != p.grid.size()) {
    throw krylov::ContractViolation("fd model: head vectors must have " + std::to_string(p.grid.size()) +
                                    " entries");
  }
}

}  // namespace

StructuredGrid StructuredGrid::make(std::size_t nx, std::size_t ny, double dx, double dy) {
  StructuredGrid g;
  g.nx = nx;
  g.ny = ny;
  g.dx = dx;
  g.dy = dy;
  g.dirichlet.assign(nx * ny, kFree);
  g.validate();
  return g;
}

void StructuredGrid::fix_side(Side side, double head) {
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const bool on = (side == Side::Left && i == 0) || (side == Side::Right && i + 1 == nx) ||
                      (side == Side::Bottom && j == 0) || (side == Side::Top && j + 1 == ny);
      if (on) dirichlet[index(i, j)] = head;
    }
  }
}

bool StructuredGrid::is_fixed(std::size_t node) const { return !std::isnan(dirichlet[node]); }

double StructuredGrid::control_area(std::size_t node) const {
  const std::size_t i = node % nx;
  const std::size_t j = node / nx;
  return dx * edge_factor(i, nx) * dy * edge_factor(j, ny);
}

void StructuredGrid::validate() const {
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid: nx and ny must be >= 2");
  if (!(dx > 0.0 && dy > 0.0)) throw std::invalid_argument("grid: dx and dy must be > 0");
  if (dirichlet.size() != nx * ny) throw std::invalid_argument("grid: dirichlet table has wrong length");
}

void fd_residual(const FdProblem& p, std::span<const double> h_new, std::span<const double> h_old,
                 std::span<double> out) {
  check_sizes(p, h_new, h_old);
  const auto& g = p.grid;
  std::vector<double> t(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (!std::isfinite(h_new[n])) throw std::domain_error("fd model: non-finite head at node " + std::to_string(n));
    t[n] = transmissivity(h_new[n], p.layer, p.sm).value;
  }
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t n = g.index(i, j);
      if (g.is_fixed(n)) {
        out[n] = h_new[n] - g.dirichlet[n];
        continue;
      }
      double flux = boundary_inflow(g, i, j);
      for_each_face(g, i, j, [&](const Face& f) {
        flux += 0.5 * (t[n] + t[f.nb]) * (h_new[f.nb] - h_new[n]) * f.conductance;
      });
      const double s = storativity(h_new[n], p.layer, p.sm).value;
      out[n] = s * (h_new[n] - h_old[n]) / p.dt - flux / g.control_area(n);
    }
  }
}

Vector fd_residual(const FdProblem& p, std::span<const double> h_new, std::span<const double> h_old) {
  Vector out(p.grid.size());
  fd_residual(p, h_new, h_old, out);
  return out;
}

krylov::CsrMatrix fd_jacobian(const FdProblem& p, std::span<const double> h_new, std::span<const double> h_old) {
  check_sizes(p, h_new, h_old);
  const auto& g = p.grid;
  std::vector<ValueSlope> t(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) t[n] = transmissivity(h_new[n], p.layer, p.sm);

  std::vector<krylov::Triplet> entries;
  entries.reserve(5 * g.size());
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t n = g.index(i, j);
      if (g.is_fixed(n)) {
        entries.push_back({n, n, 1.0});
        continue;
      }
      const double w = g.control_area(n);
      const auto s = storativity(h_new[n], p.layer, p.sm);
      double diag = (s.value + s.slope * (h_new[n] - h_old[n])) / p.dt;
      for_each_face(g, i, j, [&](const Face& f) {
        const double dh = h_new[f.nb] - h_new[n];
        const double tf = 0.5 * (t[n].value + t[f.nb].value);
        diag -= f.conductance * (0.5 * t[n].slope * dh - tf) / w;
        entries.push_back({n, f.nb, -f.conductance * (0.5 * t[f.nb].slope * dh + tf) / w});
      });
      entries.push_back({n, n, diag});
    }
  }
  return krylov::CsrMatrix::from_triplets(g.size(), g.size(), std::move(entries));
}

}  // namespace gwnk::models
