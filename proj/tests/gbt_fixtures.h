#ifndef BOOSTLEX_TESTS_GBT_FIXTURES_H_
#define BOOSTLEX_TESTS_GBT_FIXTURES_H_

#include <cmath>
#include <vector>

#include "boostlex/features.h"
#include "boostlex/gbt/ensemble.h"
#include "boostlex/gbt/matrix.h"
#include "boostlex/rng.h"

namespace boostlex::testing {

// Sparse random rows: each cell is missing with probability `missing`,
// otherwise a value from a small grid so ties occur.
inline std::vector<FeatureVector> random_rows(std::size_t n, std::size_t dim, double missing, Pcg32& rng) {
  std::vector<FeatureVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    FeatureVector v(dim);
    for (std::uint32_t c = 0; c < dim; ++c) {
      if (rng.uniform() < missing) continue;
      v.push_back(c, static_cast<double>(rng.bounded(9)) - 3.0);
    }
    rows.push_back(std::move(v));
  }
  return rows;
}

// Three classes separated by the sign pattern of the first two features.
inline void separable_data(std::size_t n, Pcg32& rng, std::vector<FeatureVector>& rows, std::vector<int>& labels) {
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(rng.bounded(3));
    const double a = (y == 0 ? -1.0 : 1.0) * (1.0 + rng.uniform());
    const double b = (y == 1 ? -1.0 : 1.0) * (1.0 + rng.uniform());
    rows.push_back(FeatureVector::dense(std::vector<double>{a, b, rng.uniform()}));
    labels.push_back(y);
  }
}

}  // namespace boostlex::testing

#endif  // BOOSTLEX_TESTS_GBT_FIXTURES_H_
