#pragma once

// Reference computations used only by tests. Nothing here shares code with
// the library paths it checks.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gwnk::testing {

using Dense = std::vector<std::vector<double>>;
using Vec = std::vector<double>;

inline Vec dense_multiply(const Dense& a, const Vec& x) {
  Vec y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

/// Gaussian elimination with partial pivoting.
inline Vec dense_solve(Dense a, Vec b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0.0) throw std::runtime_error("dense_solve: singular");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Doolittle LU without pivoting; returns {L (unit diagonal), U}.
inline std::pair<Dense, Dense> dense_lu_nopivot(const Dense& a) {
  const std::size_t n = a.size();
  Dense l(n, Vec(n, 0.0)), u(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i; k < n; ++k) {
      double s = a[i][k];
      for (std::size_t j = 0; j < i; ++j) s -= l[i][j] * u[j][k];
      u[i][k] = s;
    }
    l[i][i] = 1.0;
    for (std::size_t k = i + 1; k < n; ++k) {
      double s = a[k][i];
      for (std::size_t j = 0; j < i; ++j) s -= l[k][j] * u[j][i];
      l[k][i] = s / u[i][i];
    }
  }
  return {l, u};
}

/// Central-difference Jacobian of f at x, one column per perturbed entry.
inline Dense central_difference_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x,
                                         double rel_step = 1e-6, double abs_step = 1e-6) {
  const std::size_t n = x.size();
  const Vec f0 = f(x);
  Dense jac(f0.size(), Vec(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    const double h = rel_step * std::abs(x[j]) + abs_step;
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vec fp = f(xp), fm = f(xm);
    for (std::size_t i = 0; i < f0.size(); ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return jac;
}

inline Dense random_diagonally_dominant(std::size_t n, std::mt19937_64& rng, double density = 0.5) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  Dense a(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || keep(rng) > density) continue;
      a[i][j] = val(rng);
      off += std::abs(a[i][j]);
    }
    a[i][i] = off + 1.0 + keep(rng);
  }
  return a;
}

/// 5-point Laplacian on an m x m grid with Dirichlet closure.
inline Dense laplacian_2d(std::size_t m) {
  const std::size_t n = m * m;
  Dense a(n, Vec(n, 0.0));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t r = j * m + i;
      a[r][r] = 4.0;
      if (i > 0) a[r][r - 1] = -1.0;
      if (i + 1 < m) a[r][r + 1] = -1.0;
      if (j > 0) a[r][r - m] = -1.0;
      if (j + 1 < m) a[r][r + m] = -1.0;
    }
  return a;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace gwnk::testing
