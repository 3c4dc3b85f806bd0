#include "gwnk/models/fe_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gwnk::models {

Vector FeProblem::nodal_pumping() const {
  const std::size_t n = mesh.node_count();
  Vector q(unknowns(), 0.0);
  for (const auto& pump : pumps) {
    if (pump.layer < 1 || pump.layer > layers.size()) {
      throw std::out_of_range("pump: layer " + std::to_string(pump.layer) + " does not exist");
    }
    for (const auto node : mesh.cell_corner_nodes(pump.cell)) {
      const std::size_t k = node - 1;
      q[(pump.layer - 1) * n + k] += 0.25 * pump.rate / mesh.lumped_area[k];
    }
  }
  return q;
}

void FeProblem::validate() const {
  if (layers.size() != 2) throw std::invalid_argument("fe model: exactly two layers are supported");
  for (const auto& l : layers) l.validate();
  if (!(layers[1].Z <= layers[0].z)) {
    throw std::invalid_argument("fe model: lower layer top must not exceed upper layer bottom");
  }
  aquitard.validate();
  sm.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("fe model: dt must be > 0");
  (void)nodal_pumping();
}

FeStep::FeStep(const FeProblem& problem, std::span<const double> h_old) : p_(problem), q_(problem.nodal_pumping()) {
  if (h_old.size() != p_.unknowns()) throw krylov::ContractViolation("FeStep: old head vector has wrong length");
  Vector a(p_.unknowns());
  current_level(h_old, a);
  const std::size_t n = p_.mesh.node_count();
  old_part_.resize(p_.unknowns());
  for (std::size_t l = 0; l < p_.layers.size(); ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = l * n + i;
      const double c = storage_content(h_old[k], p_.layers[l], p_.sm).value;
      old_part_[k] = c / p_.dt - a[k];
    }
  }
}

// Half of the flux, leakage and sink terms at one time level.
void FeStep::current_level(std::span<const double> h, std::span<double> out) const {
  const auto& mesh = p_.mesh;
  const std::size_t n = mesh.node_count();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t l = 0; l < p_.layers.size(); ++l) {
    const std::size_t off = l * n;
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
      const auto& nodes = mesh.elements[e];
      const auto& k = mesh.stiffness[e];
      double te = 0.0;
      for (const auto v : nodes) te += 0.25 * transmissivity(h[off + v], p_.layers[l], p_.sm).value;
      for (int a = 0; a < 4; ++a) {
        double kh = 0.0;
        for (int b = 0; b < 4; ++b) kh += k[a][b] * h[off + nodes[b]];
        out[off + nodes[a]] += 0.5 * te * kh / mesh.lumped_area[nodes[a]];
      }
    }
  }
  const Vector lk = leakage_terms(h);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += 0.5 * lk[k];
}

Vector FeStep::leakage_terms(std::span<const double> h) const {
  const std::size_t n = p_.mesh.node_count();
  const auto& top = p_.layers[0];
  const auto& bot = p_.layers[1];
  Vector out(p_.unknowns(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = vertical_leakage(h[i], h[n + i], top.z, bot.Z, p_.aquitard, p_.sm).value;
    out[i] += v;
    out[n + i] -= v;
  }
  for (std::size_t l = 0; l < p_.layers.size(); ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = l * n + i;
      if (q_[k] == 0.0) continue;
      const double m = available_storage(h[k], p_.layers[l]).value;
      out[k] -= limited_sink(q_[k], m, p_.dt, p_.sm).value;
    }
  }
  return out;
}

void FeStep::residual(std::span<const double> h_new, std::span<double> out) const {
  if (h_new.size() != p_.unknowns() || out.size() != p_.unknowns()) {
    throw krylov::ContractViolation("FeStep: head vector has wrong length");
  }
  const std::size_t n = p_.mesh.node_count();
  for (std::size_t k = 0; k < h_new.size(); ++k) {
    if (!std::isfinite(h_new[k])) {
      throw std::domain_error("fe model: non-finite head at node " + std::to_string(k % n + 1) + " layer " +
                              std::to_string(k / n + 1));
    }
  }
  current_level(h_new, out);
  for (std::size_t l = 0; l < p_.layers.size(); ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = l * n + i;
      const double c = storage_content(h_new[k], p_.layers[l], p_.sm).value;
      out[k] += c / p_.dt - old_part_[k];
    }
  }
}

Vector FeStep::residual(std::span<const double> h_new) const {
  Vector out(p_.unknowns());
  residual(h_new, out);
  return out;
}

krylov::CsrMatrix FeStep::jacobian(std::span<const double> h) const {
  if (h.size() != p_.unknowns()) throw krylov::ContractViolation("FeStep: head vector has wrong length");
  const auto& mesh = p_.mesh;
  const std::size_t n = mesh.node_count();
  std::vector<krylov::Triplet> entries;
  entries.reserve(p_.layers.size() * (16 * mesh.elements.size() + 2 * n));

  for (std::size_t l = 0; l < p_.layers.size(); ++l) {
    const auto& layer = p_.layers[l];
    const std::size_t off = l * n;
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
      const auto& nodes = mesh.elements[e];
      const auto& k = mesh.stiffness[e];
      ValueSlope t[4];
      double te = 0.0;
      for (int a = 0; a < 4; ++a) {
        t[a] = transmissivity(h[off + nodes[a]], layer, p_.sm);
        te += 0.25 * t[a].value;
      }
      for (int a = 0; a < 4; ++a) {
        double kh = 0.0;
        for (int b = 0; b < 4; ++b) kh += k[a][b] * h[off + nodes[b]];
        const double scale = 0.5 / mesh.lumped_area[nodes[a]];
        for (int b = 0; b < 4; ++b) {
          entries.push_back({off + nodes[a], off + nodes[b], scale * (te * k[a][b] + 0.25 * t[b].slope * kh)});
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = off + i;
      double diag = storage_content(h[r], layer, p_.sm).slope / p_.dt;
      if (q_[r] != 0.0) {
        const auto m = available_storage(h[r], layer);
        diag -= 0.5 * limited_sink(q_[r], m.value, p_.dt, p_.sm).d_storage * m.slope;
      }
      entries.push_back({r, r, diag});
    }
  }

  const auto& top = p_.layers[0];
  const auto& bot = p_.layers[1];
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = vertical_leakage(h[i], h[n + i], top.z, bot.Z, p_.aquitard, p_.sm);
    entries.push_back({i, i, 0.5 * v.d_upper});
    entries.push_back({i, n + i, 0.5 * v.d_lower});
    entries.push_back({n + i, i, -0.5 * v.d_upper});
    entries.push_back({n + i, n + i, -0.5 * v.d_lower});
  }
  return krylov::CsrMatrix::from_triplets(p_.unknowns(), p_.unknowns(), std::move(entries));
}

Vector fe_residual(const FeProblem& p, std::span<const double> h_new, std::span<const double> h_old) {
  return FeStep(p, h_old).residual(h_new);
}

krylov::CsrMatrix fe_jacobian(const FeProblem& p, std::span<const double> h_new, std::span<const double> h_old) {
  return FeStep(p, h_old).jacobian(h_new);
}

}  // namespace gwnk::models
