#ifndef BOOSTLEX_TESTS_SHAP_FIXTURES_H_
#define BOOSTLEX_TESTS_SHAP_FIXTURES_H_

#include "boostlex/features.h"
#include "boostlex/gbt/tree.h"
#include "boostlex/rng.h"

namespace boostlex::testing {

// Random tree of depth <= max_depth over `features` features. Leaf covers
// are random; split covers are the sum of their children.
inline gbt::Tree random_tree(Pcg32& rng, int max_depth, std::uint32_t features) {
  gbt::Tree tree;
  auto build = [&](auto&& self, int depth) -> std::int32_t {
    const auto id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (depth == max_depth || (depth > 0 && rng.uniform() < 0.25)) {
      tree.nodes[static_cast<std::size_t>(id)].leaf = rng.uniform() * 4 - 2;
      tree.nodes[static_cast<std::size_t>(id)].cover = 0.05 + rng.uniform() * 10;
      return id;
    }
    gbt::TreeNode split;
    split.feature = static_cast<std::int32_t>(rng.bounded(features));
    split.threshold = static_cast<double>(rng.bounded(5)) - 1.5;
    split.default_left = rng.bounded(2) == 1;
    split.left = self(self, depth + 1);
    split.right = self(self, depth + 1);
    split.cover = tree.nodes[static_cast<std::size_t>(split.left)].cover +
                  tree.nodes[static_cast<std::size_t>(split.right)].cover;
    tree.nodes[static_cast<std::size_t>(id)] = split;
    return id;
  };
  build(build, 0);
  return tree;
}

// Each feature present with probability 0.8, values on a small grid.
inline FeatureVector random_instance(Pcg32& rng, std::uint32_t features) {
  FeatureVector x(features);
  for (std::uint32_t f = 0; f < features; ++f) {
    if (rng.uniform() < 0.8) x.push_back(f, static_cast<double>(rng.bounded(6)) - 2.5);
  }
  return x;
}

}  // namespace boostlex::testing

#endif  // BOOSTLEX_TESTS_SHAP_FIXTURES_H_
