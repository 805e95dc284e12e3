#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "compartdb/fp.hpp"

namespace compartdb {

/// Dense row-major matrix over Fp.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<std::uint32_t> row(std::size_t r) { return {&data_[r * cols_], cols_}; }
  std::span<const std::uint32_t> row(std::size_t r) const {
    return {&data_[r * cols_], cols_};
  }

  void append_row(std::span<const std::uint32_t> v);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> data_;
};

/// Incremental row-echelon form over Fp, for rank and row-space queries.
/// Absorbed rows are normalized (pivot 1) but not back-substituted.
class RowEchelon {
 public:
  RowEchelon(std::size_t cols, const PrimeField& f) : cols_(cols), field_(f) {}

  /// Reduces v against the rows held so far; if a nonzero remainder
  /// survives, keeps it as a new pivot row and returns true.
  bool absorb(std::vector<std::uint32_t> v);

  /// True iff v lies in the span of the absorbed rows.
  bool in_rowspace(std::vector<std::uint32_t> v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

 private:
  // Eliminates known pivots from v; returns the first nonzero column or
  // cols_ when v reduced to zero.
  std::size_t reduce(std::vector<std::uint32_t>& v) const;

  std::size_t cols_;
  PrimeField field_;
  std::vector<std::vector<std::uint32_t>> rows_;  // sorted by pivot column
  std::vector<std::size_t> pivots_;
};

/// Rank by Gaussian elimination.
int matrix_rank_fp(const FpMatrix& m, const PrimeField& f);

}  // namespace compartdb
