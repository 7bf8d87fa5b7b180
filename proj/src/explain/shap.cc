#include "boostlex/explain/shap.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace boostlex::explain {
namespace {

using gbt::Tree;
using gbt::TreeNode;

const TreeNode& node_at(const Tree& tree, std::int32_t i) { return tree.nodes[static_cast<std::size_t>(i)]; }

void check_covers(const Tree& tree, std::size_t dimension) {
  if (tree.nodes.empty()) throw std::invalid_argument("empty tree");
  for (const auto& n : tree.nodes) {
    if (!(n.cover > 0)) throw std::invalid_argument("tree node with nonpositive cover");
    if (!n.is_leaf() && static_cast<std::size_t>(n.feature) >= dimension) {
      throw std::invalid_argument("split feature outside the attribution vector");
    }
  }
}

double expectation(const Tree& tree, std::int32_t i) {
  const auto& n = node_at(tree, i);
  if (n.is_leaf()) return n.leaf;
  const auto& l = node_at(tree, n.left);
  const auto& r = node_at(tree, n.right);
  return (l.cover * expectation(tree, n.left) + r.cover * expectation(tree, n.right)) / n.cover;
}

struct PathElement {
  std::int32_t feature;
  double zero_fraction;
  double one_fraction;
  double weight;
};

void extend(std::vector<PathElement>& path, std::size_t depth, double zero_fraction, double one_fraction,
            std::int32_t feature) {
  path[depth] = {feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  const double d1 = static_cast<double>(depth + 1);
  for (std::size_t i = depth; i-- > 0;) {
    path[i + 1].weight += one_fraction * path[i].weight * static_cast<double>(i + 1) / d1;
    path[i].weight = zero_fraction * path[i].weight * static_cast<double>(depth - i) / d1;
  }
}

void unwind(std::vector<PathElement>& path, std::size_t depth, std::size_t index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  const double d1 = static_cast<double>(depth + 1);
  double next = path[depth].weight;
  for (std::size_t i = depth; i-- > 0;) {
    if (one != 0) {
      const double tmp = path[i].weight;
      path[i].weight = next * d1 / (static_cast<double>(i + 1) * one);
      next = tmp - path[i].weight * zero * static_cast<double>(depth - i) / d1;
    } else {
      path[i].weight = path[i].weight * d1 / (zero * static_cast<double>(depth - i));
    }
  }
  for (std::size_t i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

double unwound_sum(const std::vector<PathElement>& path, std::size_t depth, std::size_t index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  const double d1 = static_cast<double>(depth + 1);
  double next = path[depth].weight;
  double total = 0;
  for (std::size_t i = depth; i-- > 0;) {
    if (one != 0) {
      const double tmp = next * d1 / (static_cast<double>(i + 1) * one);
      total += tmp;
      next = path[i].weight - tmp * zero * static_cast<double>(depth - i) / d1;
    } else if (zero != 0) {
      total += path[i].weight / zero / (static_cast<double>(depth - i) / d1);
    }
  }
  return total;
}

struct Shap {
  const Tree& tree;
  const FeatureVector& x;
  std::span<double> phi;

  void recurse(std::int32_t i, std::vector<PathElement> path, std::size_t depth, double zero_fraction,
               double one_fraction, std::int32_t feature) {
    path.resize(std::max(path.size(), depth + 1));
    extend(path, depth, zero_fraction, one_fraction, feature);
    const auto& n = node_at(tree, i);
    if (n.is_leaf()) {
      for (std::size_t k = 1; k <= depth; ++k) {
        const double w = unwound_sum(path, depth, k);
        const auto& e = path[k];
        phi[static_cast<std::size_t>(e.feature)] += w * (e.one_fraction - e.zero_fraction) * n.leaf;
      }
      return;
    }
    const auto hot = tree.child(i, x);
    const auto cold = hot == n.left ? n.right : n.left;
    const double hot_zero = node_at(tree, hot).cover / n.cover;
    const double cold_zero = node_at(tree, cold).cover / n.cover;
    double incoming_zero = 1, incoming_one = 1;
    std::size_t k = 0;
    for (; k <= depth; ++k) {
      if (path[k].feature == n.feature) break;
    }
    if (k <= depth) {
      incoming_zero = path[k].zero_fraction;
      incoming_one = path[k].one_fraction;
      unwind(path, depth, k);
      --depth;
    }
    recurse(hot, path, depth + 1, hot_zero * incoming_zero, incoming_one, n.feature);
    recurse(cold, path, depth + 1, cold_zero * incoming_zero, 0, n.feature);
  }
};

}  // namespace

double expected_value(const Tree& tree) {
  check_covers(tree, static_cast<std::size_t>(-1));
  return expectation(tree, 0);
}

double tree_shap(const Tree& tree, const FeatureVector& x, std::span<double> phi) {
  check_covers(tree, phi.size());
  const double expected = expectation(tree, 0);
  if (tree.nodes.front().is_leaf()) return expected;
  Shap shap{tree, x, phi};
  shap.recurse(0, {}, 0, 1, 1, -1);
  return expected;
}

std::vector<double> brute_force_shapley(const Tree& tree, const FeatureVector& x, std::size_t dimension) {
  check_covers(tree, dimension);
  std::vector<std::int32_t> features;
  for (const auto& n : tree.nodes) {
    if (!n.is_leaf()) features.push_back(n.feature);
  }
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());
  const std::size_t m = features.size();
  if (m > kMaxBruteForceFeatures) throw std::invalid_argument("too many distinct features for brute-force Shapley");

  std::vector<double> phi(dimension, 0.0);
  if (m == 0) return phi;

  auto bit_of = [&](std::int32_t f) {
    return static_cast<std::size_t>(std::lower_bound(features.begin(), features.end(), f) - features.begin());
  };
  auto value = [&](auto&& self, std::int32_t i, std::uint32_t mask) -> double {
    const auto& n = node_at(tree, i);
    if (n.is_leaf()) return n.leaf;
    if (mask >> bit_of(n.feature) & 1u) return self(self, tree.child(i, x), mask);
    const auto& l = node_at(tree, n.left);
    const auto& r = node_at(tree, n.right);
    return (l.cover * self(self, n.left, mask) + r.cover * self(self, n.right, mask)) / n.cover;
  };
  const std::uint32_t subsets = 1u << m;
  std::vector<double> v(subsets);
  for (std::uint32_t s = 0; s < subsets; ++s) v[s] = value(value, 0, s);

  // weight[k] = k! (m - k - 1)! / m!
  std::vector<double> weight(m);
  for (std::size_t k = 0; k < m; ++k) {
    double w = 1.0 / static_cast<double>(m);
    for (std::size_t j = 1; j <= k; ++j) w *= static_cast<double>(j) / static_cast<double>(m - j);
    weight[k] = w;
  }
  for (std::size_t b = 0; b < m; ++b) {
    double total = 0;
    for (std::uint32_t s = 0; s < subsets; ++s) {
      if (s >> b & 1u) continue;
      total += weight[static_cast<std::size_t>(std::popcount(s))] * (v[s | (1u << b)] - v[s]);
    }
    phi[static_cast<std::size_t>(features[b])] = total;
  }
  return phi;
}

Attribution explain_instance(const gbt::TreeEnsemble& model, const FeatureVector& x, int class_index,
                             const FeatureRegistry* registry) {
  if (class_index < 0 || class_index >= static_cast<int>(kNumClasses)) {
    throw std::invalid_argument("class index " + std::to_string(class_index) + " out of range");
  }
  if (x.dimension() != model.feature_dimension) throw std::invalid_argument("feature dimension does not match model");
  if (registry && registry->size() != model.feature_dimension) {
    throw std::invalid_argument("registry size does not match model dimension");
  }
  const auto k = static_cast<std::size_t>(class_index);
  Attribution a;
  a.class_index = class_index;
  a.phi.assign(model.feature_dimension, 0.0);
  a.base_value = model.base_score;
  a.output = model.base_score;
  for (const auto& round : model.rounds) {
    a.base_value += tree_shap(round[k], x, a.phi);
    a.output += round[k].predict(x);
  }
  if (registry) {
    a.feature_names = registry->names();
  } else {
    a.feature_names.reserve(model.feature_dimension);
    for (std::size_t f = 0; f < model.feature_dimension; ++f) a.feature_names.push_back("f" + std::to_string(f));
  }
  return a;
}

std::vector<Attribution> explain_batch(const gbt::TreeEnsemble& model, std::span<const FeatureVector> xs,
                                       std::span<const int> class_indices, const FeatureRegistry* registry) {
  if (class_indices.size() != xs.size()) throw std::invalid_argument("one class index per row required");
  std::vector<Attribution> out(xs.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(xs.size()); ++i) {
    try {
      const auto u = static_cast<std::size_t>(i);
      out[u] = explain_instance(model, xs[u], class_indices[u], registry);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace boostlex::explain
