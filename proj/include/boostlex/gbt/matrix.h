#ifndef BOOSTLEX_GBT_MATRIX_H_
#define BOOSTLEX_GBT_MATRIX_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "boostlex/features.h"

namespace boostlex::gbt {

// Read-only view of one sparse row with columns in increasing order.
struct SparseRow {
  std::span<const std::uint32_t> columns;
  std::span<const double> values;

  std::optional<double> get(std::uint32_t column) const;
};

// Row-major (CSR) training matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  // Throws std::invalid_argument if any row's dimension differs from
  // `num_features`.
  FeatureMatrix(std::span<const FeatureVector> rows, std::size_t num_features);

  std::size_t num_rows() const { return row_ptr_.size() - 1; }
  std::size_t num_features() const { return num_features_; }
  std::size_t nnz() const { return columns_.size(); }
  SparseRow row(std::size_t r) const;

 private:
  std::size_t num_features_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> columns_;
  std::vector<double> values_;
};

// Column-major copy of the present entries, each column sorted by
// (value, row). Built once per training run.
class ColumnIndex {
 public:
  struct Entry {
    double value;
    std::uint32_t row;
  };

  explicit ColumnIndex(const FeatureMatrix& matrix);

  std::span<const Entry> column(std::size_t feature) const {
    return {entries_.data() + col_ptr_[feature], col_ptr_[feature + 1] - col_ptr_[feature]};
  }
  std::size_t num_features() const { return col_ptr_.size() - 1; }

 private:
  std::vector<std::size_t> col_ptr_;
  std::vector<Entry> entries_;
};

}  // namespace boostlex::gbt

#endif  // BOOSTLEX_GBT_MATRIX_H_
