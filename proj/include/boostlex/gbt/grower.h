#ifndef BOOSTLEX_GBT_GROWER_H_
#define BOOSTLEX_GBT_GROWER_H_

#include <cstdint>
#include <span>

#include "boostlex/gbt/matrix.h"
#include "boostlex/gbt/tree.h"

namespace boostlex::gbt {

// Midpoint between adjacent distinct sorted values a < b, nudged to b when
// rounding would collapse it onto a.
inline double split_threshold(double a, double b) {
  const double t = a + (b - a) / 2;
  return t > a ? t : b;
}

// One split candidate. Ordering: larger gain wins; equal gains go to the
// lower feature index; within a feature the first candidate scanned wins.
struct SplitCandidate {
  std::int32_t feature = -1;
  double threshold = 0;
  bool default_left = false;
  double gain = 0;

  bool valid() const { return feature >= 0; }
  bool beats(const SplitCandidate& other) const {
    if (!other.valid()) return valid();
    return gain > other.gain || (gain == other.gain && feature < other.feature);
  }
};

// Exact greedy growth, level by level. Each feature column is scanned once
// per level for every open node: ascending with missing values routed right,
// then (only when the node has missing rows) descending with missing values
// routed left, then the present-vs-missing split. Features are scanned in
// parallel; the result does not depend on the thread count.
// Throws std::invalid_argument on empty input or misaligned g/h.
Tree grow_tree(const FeatureMatrix& matrix, const ColumnIndex& columns, std::span<const double> g,
               std::span<const double> h, const TrainParams& params);

namespace reference {

// Serial, recursive version of the same algorithm that re-sorts each node's
// rows per feature. Kept for tests and benchmarks; produces the same tree
// as gbt::grow_tree (node numbering aside).
Tree grow_tree(const FeatureMatrix& matrix, std::span<const double> g, std::span<const double> h,
               const TrainParams& params);

}  // namespace reference

// Structural equality ignoring node numbering.
bool same_structure(const Tree& a, const Tree& b);

}  // namespace boostlex::gbt

#endif  // BOOSTLEX_GBT_GROWER_H_
