#include "gwnk/krylov/ilu0.hpp"

#include <cmath>

namespace gwnk::krylov {

IluFactors ilu0_factorize(const CsrMatrix& a) {
  if (a.n_rows != a.n_cols) throw ContractViolation("ilu0_factorize: matrix is not square");
  const std::size_t n = a.n_rows;

  IluFactors f{a, std::vector<std::size_t>(n, CsrMatrix::npos)};
  auto& lu = f.lu;
  for (std::size_t i = 0; i < n; ++i) {
    f.diagonal[i] = lu.find(i, i);
    if (f.diagonal[i] == CsrMatrix::npos) throw ZeroPivotError(i);
  }

  // IKJ variant restricted to the pattern of A. `where[j]` maps a column of
  // the current row to its slot in lu.values.
  std::vector<std::size_t> where(n, CsrMatrix::npos);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t begin = lu.row_offsets[i];
    const std::size_t end = lu.row_offsets[i + 1];
    for (std::size_t k = begin; k < end; ++k) where[lu.col_indices[k]] = k;

    for (std::size_t kk = begin; kk < end && lu.col_indices[kk] < i; ++kk) {
      const std::size_t k = lu.col_indices[kk];
      const double pivot = lu.values[f.diagonal[k]];
      lu.values[kk] /= pivot;
      const double lik = lu.values[kk];
      for (std::size_t jj = f.diagonal[k] + 1; jj < lu.row_offsets[k + 1]; ++jj) {
        const std::size_t slot = where[lu.col_indices[jj]];
        if (slot != CsrMatrix::npos) lu.values[slot] -= lik * lu.values[jj];
      }
    }

    const double d = lu.values[f.diagonal[i]];
    if (d == 0.0 || !std::isfinite(d)) throw ZeroPivotError(i);
    for (std::size_t k = begin; k < end; ++k) where[lu.col_indices[k]] = CsrMatrix::npos;
  }
  return f;
}

void ilu_apply(const IluFactors& f, std::span<const double> r, std::span<double> z) {
  const auto& lu = f.lu;
  const std::size_t n = lu.n_rows;
  if (r.size() != n || z.size() != n) throw ContractViolation("ilu_apply: dimension mismatch");

  for (std::size_t i = 0; i < n; ++i) {
    double s = r[i];
    for (std::size_t k = lu.row_offsets[i]; k < f.diagonal[i]; ++k) s -= lu.values[k] * z[lu.col_indices[k]];
    z[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = z[i];
    for (std::size_t k = f.diagonal[i] + 1; k < lu.row_offsets[i + 1]; ++k) s -= lu.values[k] * z[lu.col_indices[k]];
    z[i] = s / lu.values[f.diagonal[i]];
  }
}

Vector ilu_apply(const IluFactors& f, std::span<const double> r) {
  Vector z(r.size());
  ilu_apply(f, r, z);
  return z;
}

}  // namespace gwnk::krylov
