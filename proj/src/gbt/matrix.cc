#include "boostlex/gbt/matrix.h"

#include <algorithm>
#include <stdexcept>

namespace boostlex::gbt {

std::optional<double> SparseRow::get(std::uint32_t column) const {
  const auto it = std::lower_bound(columns.begin(), columns.end(), column);
  if (it == columns.end() || *it != column) return std::nullopt;
  return values[static_cast<std::size_t>(it - columns.begin())];
}

FeatureMatrix::FeatureMatrix(std::span<const FeatureVector> rows, std::size_t num_features)
    : num_features_(num_features) {
  std::size_t total = 0;
  for (const auto& r : rows) total += r.nnz();
  row_ptr_.reserve(rows.size() + 1);
  columns_.reserve(total);
  values_.reserve(total);
  for (const auto& r : rows) {
    if (r.dimension() != num_features) throw std::invalid_argument("feature row has the wrong dimension");
    for (const auto& [c, v] : r.entries()) {
      columns_.push_back(c);
      values_.push_back(v);
    }
    row_ptr_.push_back(columns_.size());
  }
}

SparseRow FeatureMatrix::row(std::size_t r) const {
  const auto begin = row_ptr_[r], end = row_ptr_[r + 1];
  return {std::span<const std::uint32_t>(columns_).subspan(begin, end - begin),
          std::span<const double>(values_).subspan(begin, end - begin)};
}

ColumnIndex::ColumnIndex(const FeatureMatrix& matrix) : col_ptr_(matrix.num_features() + 1, 0) {
  for (std::size_t r = 0; r < matrix.num_rows(); ++r) {
    for (auto c : matrix.row(r).columns) ++col_ptr_[c + 1];
  }
  for (std::size_t f = 0; f < matrix.num_features(); ++f) col_ptr_[f + 1] += col_ptr_[f];
  entries_.resize(col_ptr_.back());
  std::vector<std::size_t> fill(col_ptr_.begin(), col_ptr_.end() - 1);
  for (std::size_t r = 0; r < matrix.num_rows(); ++r) {
    const auto row = matrix.row(r);
    for (std::size_t i = 0; i < row.columns.size(); ++i) {
      entries_[fill[row.columns[i]]++] = Entry{row.values[i], static_cast<std::uint32_t>(r)};
    }
  }
  const auto nf = static_cast<std::ptrdiff_t>(matrix.num_features());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t f = 0; f < nf; ++f) {
    std::sort(entries_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[static_cast<std::size_t>(f)]),
              entries_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[static_cast<std::size_t>(f) + 1]),
              [](const Entry& a, const Entry& b) { return a.value != b.value ? a.value < b.value : a.row < b.row; });
  }
}

}  // namespace boostlex::gbt
