#include "compartdb/fp_linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "compartdb/kernels/fp_kernels.hpp"

namespace compartdb {

void FpMatrix::append_row(std::span<const std::uint32_t> v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

std::size_t RowEchelon::reduce(std::vector<std::uint32_t>& v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    std::size_t col = pivots_[k];
    if (v[col] == 0) continue;
    // v -= v[col] * row_k  (row_k has pivot 1 at col)
    kernels::axpy_mod(v.data() + col, rows_[k].data() + col, cols_ - col,
                      field_.neg(v[col]), field_);
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c] != 0) return c;
  }
  return cols_;
}

bool RowEchelon::absorb(std::vector<std::uint32_t> v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  std::size_t pivot = reduce(v);
  if (pivot == cols_) return false;
  kernels::scale_mod(v.data() + pivot, cols_ - pivot, field_.inv(v[pivot]), field_);
  // Keep rows ordered by pivot column so reduce() sweeps left to right.
  std::size_t pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) -
                    pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, pivot);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

bool RowEchelon::in_rowspace(std::vector<std::uint32_t> v) const {
  return reduce(v) == cols_;
}

int matrix_rank_fp(const FpMatrix& m, const PrimeField& f) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  RowEchelon re(m.cols(), f);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    re.absorb(std::vector<std::uint32_t>(m.row(r).begin(), m.row(r).end()));
  }
  return int(re.rank());
}

}  // namespace compartdb
