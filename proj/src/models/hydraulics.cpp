#include "gwnk/models/hydraulics.hpp"

#include <cmath>
#include <stdexcept>

namespace gwnk::models {

void LayerParams::validate() const {
  if (!(K > 0.0)) throw std::invalid_argument("layer: K must be > 0");
  if (!(S_y > 0.0 && S_y < 1.0)) throw std::invalid_argument("layer: S_y must lie in (0, 1)");
  if (!(S_o >= 0.0)) throw std::invalid_argument("layer: S_o must be >= 0");
  if (!(Z > z)) throw std::invalid_argument("layer: top elevation Z must exceed bottom z");
}

void AquitardParams::validate() const {
  if (!(K_v > 0.0)) throw std::invalid_argument("aquitard: K_v must be > 0");
  if (!(D > 0.0)) throw std::invalid_argument("aquitard: D must be > 0");
}

ValueSlope transmissivity(double h, const LayerParams& p, const SmoothingParams& sm) {
  const double t = p.K * (p.Z - chks_max(p.Z - h, sm.eps_s) - p.z);
  const double floor = p.K * std::sqrt(sm.eps_s);
  if (t < floor) return {floor, 0.0};
  return {t, p.K * chks_max_derivative(p.Z - h, sm.eps_s)};
}

ValueSlope storativity(double h, const LayerParams& p, const SmoothingParams& sm) {
  const double jump = p.S_o * p.B() - p.S_y;
  return {p.S_y + jump * sigmoid_step(h - p.Z, sm.beta), jump * sigmoid_step_derivative(h - p.Z, sm.beta)};
}

namespace {

// log(1 + e^x) without overflow
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

ValueSlope storage_content(double h, const LayerParams& p, const SmoothingParams& sm) {
  const double jump = p.S_o * p.B() - p.S_y;
  const double x = h - p.Z;
  const double value = p.S_y * x + jump * (softplus(sm.beta * x) - std::log(2.0)) / sm.beta;
  return {value, storativity(h, p, sm).value};
}

ValueSlope available_storage(double h, const LayerParams& p) {
  if (h <= p.z) return {0.0, 0.0};
  if (h <= p.Z) return {p.S_y * (h - p.z), p.S_y};
  return {p.S_y * p.B() + p.S_o * p.B() * (h - p.Z), p.S_o * p.B()};
}

Leakage vertical_leakage(double h_u, double h_b, double z_u, double Z_b, const AquitardParams& a,
                         const SmoothingParams& sm) {
  const double c = a.K_v / a.D;
  const double upper = z_u + chks_max(h_u - z_u, sm.eps_s);
  const double lower = Z_b + chks_max(h_b - Z_b, sm.eps_s);
  return {c * (upper - lower), c * chks_max_derivative(h_u - z_u, sm.eps_s),
          -c * chks_max_derivative(h_b - Z_b, sm.eps_s)};
}

SinkValue limited_sink(double q, double M, double dt, const SmoothingParams& sm) {
  if (q >= 0.0) return {q, 0.0};
  const double excess = -q - M / dt;
  return {q + chks_max(excess, sm.eps_s), -chks_max_derivative(excess, sm.eps_s) / dt};
}

}  // namespace gwnk::models
