#pragma once

#include "gwnk/models/smoothing.hpp"

namespace gwnk::models {

/// One aquifer layer. Elevations in feet, K in ft/day.
struct LayerParams {
  double K = 0.0;    // horizontal hydraulic conductivity
  double S_y = 0.0;  // specific yield
  double S_o = 0.0;  // specific storage (1/L)
  double z = 0.0;    // bottom elevation
  double Z = 0.0;    // top elevation

  [[nodiscard]] double B() const { return Z - z; }
  void validate() const;
};

struct AquitardParams {
  double K_v = 0.0;
  double D = 0.0;

  void validate() const;
};

struct ValueSlope {
  double value;
  double slope;  // derivative with respect to the head argument
};

/// K (min(h, Z) - z) with the min smoothed, floored at K sqrt(eps_s).
ValueSlope transmissivity(double h, const LayerParams& p, const SmoothingParams& sm);

/// S_y below the top, S_o B above, joined by a sigmoid.
ValueSlope storativity(double h, const LayerParams& p, const SmoothingParams& sm);

/**
 * Storage content C(h) with dC/dh = storativity(h) and C(Z) = 0.
 * Equals S(h)(h - Z) outside the sigmoid band up to a constant that cancels
 * in time differences, but stays monotone inside it.
 */
ValueSlope storage_content(double h, const LayerParams& p, const SmoothingParams& sm);

/// Water per unit area above the bottom (piecewise, not smoothed).
ValueSlope available_storage(double h, const LayerParams& p);

struct Leakage {
  double value;  // positive for downward flow
  double d_upper;
  double d_lower;
};

/// (K_v/D) [max(h_u, z_u) - max(h_b, Z_b)] with both max terms smoothed.
Leakage vertical_leakage(double h_u, double h_b, double z_u, double Z_b, const AquitardParams& a,
                         const SmoothingParams& sm);

struct SinkValue {
  double value;
  double d_storage;  // derivative with respect to M
};

/// Sink rate q (L/T, negative = extraction) capped at M/dt in magnitude.
SinkValue limited_sink(double q, double M, double dt, const SmoothingParams& sm);

}  // namespace gwnk::models
