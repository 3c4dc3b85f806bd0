#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwnk/krylov/csr_matrix.hpp"

namespace gwnk::krylov {

class ZeroPivotError : public std::runtime_error {
 public:
  explicit ZeroPivotError(std::size_t row)
      : std::runtime_error("ILU(0): zero pivot at row " + std::to_string(row)), row_(row) {}
  [[nodiscard]] std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// Zero-fill incomplete LU factors. L has a unit diagonal that is not stored;
/// strictly-lower entries of `lu` belong to L, the rest to U.
struct IluFactors {
  CsrMatrix lu;
  std::vector<std::size_t> diagonal;  // position of (i,i) inside lu.values
};

IluFactors ilu0_factorize(const CsrMatrix& a);

void ilu_apply(const IluFactors& f, std::span<const double> r, std::span<double> z);
[[nodiscard]] Vector ilu_apply(const IluFactors& f, std::span<const double> r);

}  // namespace gwnk::krylov
