#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwnk::krylov {

using Vector = std::vector<double>;

/// Thrown when a caller breaks a documented precondition (sizes, ranges).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/**
 * @brief Compressed sparse row matrix.
 *
 * Column indices inside a row are strictly increasing and every (row, col)
 * pair is stored at most once. Use from_triplets() to build one from an
 * unordered list; duplicates are summed there.
 */
struct CsrMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::size_t> row_offsets{0};
  std::vector<std::size_t> col_indices;
  std::vector<double> values;

  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols,
                                 std::vector<Triplet> entries);
  static CsrMatrix from_dense(const std::vector<Vector>& dense);
  static CsrMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t nnz() const { return values.size(); }

  /// Stored value at (row, col), or 0 when the entry is outside the pattern.
  [[nodiscard]] double at(std::size_t row, std::size_t col) const;

  /// Position of (row, col) in values/col_indices, or npos.
  [[nodiscard]] std::size_t find(std::size_t row, std::size_t col) const;

  [[nodiscard]] std::vector<Vector> to_dense() const;

  /// Throws ContractViolation if any structural invariant is broken.
  void validate() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
[[nodiscard]] Vector spmv(const CsrMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);

}  // namespace gwnk::krylov
