#ifndef BOOSTLEX_EXPLAIN_SHAP_H_
#define BOOSTLEX_EXPLAIN_SHAP_H_

#include <span>
#include <string>
#include <vector>

#include "boostlex/features.h"
#include "boostlex/gbt/ensemble.h"
#include "boostlex/gbt/tree.h"

namespace boostlex::explain {

// Expected tree output with absent features resolved by cover-weighted
// averaging of both children at every split.
double expected_value(const gbt::Tree& tree);

// Path-dependent TreeSHAP. Adds the tree's Shapley values for x into phi
// (indexed by feature) and returns the expected value. Throws
// std::invalid_argument on a nonpositive cover or a split feature outside phi.
double tree_shap(const gbt::Tree& tree, const FeatureVector& x, std::span<double> phi);

inline constexpr std::size_t kMaxBruteForceFeatures = 20;

// Shapley values by enumerating every subset of the tree's split features.
// Returns a vector of length `dimension`. Throws std::invalid_argument when
// the tree splits on more than kMaxBruteForceFeatures distinct features.
std::vector<double> brute_force_shapley(const gbt::Tree& tree, const FeatureVector& x, std::size_t dimension);

struct Attribution {
  std::vector<double> phi;
  double base_value = 0;
  double output = 0;
  int class_index = 0;
  std::vector<std::string> feature_names;
};

// Explains the pre-softmax margin of one class. feature_names come from the
// registry when given (its size must match), else "f<index>". Throws
// std::invalid_argument on a bad class index or dimension.
Attribution explain_instance(const gbt::TreeEnsemble& model, const FeatureVector& x, int class_index,
                             const FeatureRegistry* registry = nullptr);

// One attribution per row; class_indices[i] picks the class for row i.
std::vector<Attribution> explain_batch(const gbt::TreeEnsemble& model, std::span<const FeatureVector> xs,
                                       std::span<const int> class_indices, const FeatureRegistry* registry = nullptr);

}  // namespace boostlex::explain

#endif  // BOOSTLEX_EXPLAIN_SHAP_H_
