#include "gwnk/sim/scenario.hpp"

namespace gwnk::sim {

namespace {

void apply_side(models::StructuredGrid& g, models::Side side, const SideCondition& c) {
  if (c.kind == SideCondition::Kind::Fixed) g.fix_side(side, c.value);
  if (c.kind == SideCondition::Kind::Flux) g.side_flux[static_cast<std::size_t>(side)] = c.value;
}

}  // namespace

Scenario::Scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  if (const auto* s = std::get_if<FdSetup>(&cfg.model)) {
    models::FdProblem p;
    p.grid = models::StructuredGrid::make(s->nx, s->ny, s->dx, s->dy);
    // left and right are applied last so that they own the corners
    apply_side(p.grid, models::Side::Bottom, s->bottom);
    apply_side(p.grid, models::Side::Top, s->top);
    apply_side(p.grid, models::Side::Left, s->left);
    apply_side(p.grid, models::Side::Right, s->right);
    p.layer = s->layer;
    p.dt = cfg.dt;
    p.sm = cfg.sm;
    h0_.assign(p.grid.size(), s->h0);
    for (std::size_t j = 0; j < s->ny; ++j) {
      for (std::size_t i = 0; i < s->nx; ++i) {
        nodes_.node_id.push_back(j * s->nx + i + 1);
        nodes_.x.push_back(static_cast<double>(i) * s->dx);
        nodes_.y.push_back(static_cast<double>(j) * s->dy);
        nodes_.layer.push_back(1);
      }
    }
    fd_ = std::move(p);
    return;
  }
  const auto& s = std::get<FeSetup>(cfg.model);
  models::FeProblem p;
  p.mesh = models::FeMesh::rectangular(s.cells_x, s.cells_y, s.dx, s.dy);
  p.layers = {s.top, s.bottom};
  p.aquitard = s.aquitard;
  p.pumps = s.pumps;
  p.dt = cfg.dt;
  p.sm = cfg.sm;
  p.validate();
  const std::size_t n = p.mesh.node_count();
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      h0_.push_back(l == 0 ? s.h0_top : s.h0_bottom);
      nodes_.node_id.push_back(i + 1);
      nodes_.x.push_back(p.mesh.nodes[i].x);
      nodes_.y.push_back(p.mesh.nodes[i].y);
      nodes_.layer.push_back(l + 1);
    }
  }
  fe_ = std::move(p);
}

Vector Scenario::initial_heads() const { return h0_; }

StepSystem Scenario::make_step(std::span<const double> h_old) const {
  if (h_old.size() != unknowns()) throw krylov::ContractViolation("Scenario::make_step: wrong head vector length");
  if (fd_) {
    auto old = std::make_shared<const Vector>(h_old.begin(), h_old.end());
    const models::FdProblem* p = &*fd_;
    return {[p, old](std::span<const double> h, std::span<double> out) { models::fd_residual(*p, h, *old, out); },
            [p, old](std::span<const double> h) { return models::fd_jacobian(*p, h, *old); }};
  }
  auto step = std::make_shared<const models::FeStep>(*fe_, h_old);
  return {[step](std::span<const double> h, std::span<double> out) { step->residual(h, out); },
          [step](std::span<const double> h) { return step->jacobian(h); }};
}

namespace {

// Storage content shifted so that it reads zero at the aquifer base.
double smoothed_storage(double h, const models::LayerParams& p, const models::SmoothingParams& sm) {
  return models::storage_content(h, p, sm).value + p.S_y * p.B();
}

}  // namespace

double Scenario::total_storage(std::span<const double> h) const {
  double total = 0.0;
  if (fd_) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      total += fd_->grid.control_area(i) * smoothed_storage(h[i], fd_->layer, fd_->sm);
    }
    return total;
  }
  const std::size_t n = fe_->mesh.node_count();
  for (std::size_t k = 0; k < h.size(); ++k) {
    total += fe_->mesh.lumped_area[k % n] * smoothed_storage(h[k], fe_->layers[k / n], fe_->sm);
  }
  return total;
}

}  // namespace gwnk::sim
