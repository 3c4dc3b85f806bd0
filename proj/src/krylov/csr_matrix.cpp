#include "gwnk/krylov/csr_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace gwnk::krylov {

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols) {
      throw ContractViolation("CsrMatrix::from_triplets: entry (" + std::to_string(t.row) + "," +
                              std::to_string(t.col) + ") outside " + std::to_string(rows) + "x" +
                              std::to_string(cols));
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  CsrMatrix m;
  m.n_rows = rows;
  m.n_cols = cols;
  m.row_offsets.assign(rows + 1, 0);
  m.col_indices.reserve(entries.size());
  m.values.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& t = entries[k];
    if (!m.col_indices.empty() && k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
      m.values.back() += t.value;
      continue;
    }
    m.col_indices.push_back(t.col);
    m.values.push_back(t.value);
    ++m.row_offsets[t.row + 1];
  }
  for (std::size_t i = 0; i < rows; ++i) m.row_offsets[i + 1] += m.row_offsets[i];
  return m;
}

CsrMatrix CsrMatrix::from_dense(const std::vector<Vector>& dense) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows == 0 ? 0 : dense.front().size();
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    if (dense[i].size() != cols) throw ContractViolation("CsrMatrix::from_dense: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (dense[i][j] != 0.0) entries.push_back({i, j, dense[i][j]});
    }
  }
  return from_triplets(rows, cols, std::move(entries));
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  CsrMatrix m;
  m.n_rows = m.n_cols = n;
  m.row_offsets.resize(n + 1);
  m.col_indices.resize(n);
  m.values.assign(n, 1.0);
  for (std::size_t i = 0; i <= n; ++i) m.row_offsets[i] = i;
  for (std::size_t i = 0; i < n; ++i) m.col_indices[i] = i;
  return m;
}

std::size_t CsrMatrix::find(std::size_t row, std::size_t col) const {
  if (row >= n_rows) return npos;
  const auto first = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[row]);
  const auto last = col_indices.begin() + static_cast<std::ptrdiff_t>(row_offsets[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return npos;
  return static_cast<std::size_t>(it - col_indices.begin());
}

double CsrMatrix::at(std::size_t row, std::size_t col) const {
  const auto k = find(row, col);
  return k == npos ? 0.0 : values[k];
}

std::vector<Vector> CsrMatrix::to_dense() const {
  std::vector<Vector> d(n_rows, Vector(n_cols, 0.0));
  for (std::size_t i = 0; i < n_rows; ++i) {
    for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) d[i][col_indices[k]] = values[k];
  }
  return d;
}

void CsrMatrix::validate() const {
  if (row_offsets.size() != n_rows + 1) throw ContractViolation("CsrMatrix: row_offsets length != n_rows+1");
  if (row_offsets.front() != 0) throw ContractViolation("CsrMatrix: row_offsets[0] != 0");
  if (row_offsets.back() != values.size() || values.size() != col_indices.size()) {
    throw ContractViolation("CsrMatrix: row_offsets[n_rows], values and col_indices disagree");
  }
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (row_offsets[i + 1] < row_offsets[i]) throw ContractViolation("CsrMatrix: row_offsets decreasing");
    for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
      if (col_indices[k] >= n_cols) {
        throw ContractViolation("CsrMatrix: column index out of range in row " + std::to_string(i));
      }
      if (k > row_offsets[i] && col_indices[k] <= col_indices[k - 1]) {
        throw ContractViolation("CsrMatrix: columns not strictly increasing in row " + std::to_string(i));
      }
    }
  }
}

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  if (x.size() != a.n_cols || y.size() != a.n_rows) {
    throw ContractViolation("spmv: dimension mismatch (" + std::to_string(a.n_rows) + "x" +
                            std::to_string(a.n_cols) + " matrix, x of length " + std::to_string(x.size()) +
                            ")");
  }
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    double sum = 0.0;
    for (std::size_t k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) sum += a.values[k] * x[a.col_indices[k]];
    y[i] = sum;
  }
}

Vector spmv(const CsrMatrix& a, std::span<const double> x) {
  Vector y(a.n_rows);
  spmv(a, x, y);
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractViolation("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace gwnk::krylov
