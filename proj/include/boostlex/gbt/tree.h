#ifndef BOOSTLEX_GBT_TREE_H_
#define BOOSTLEX_GBT_TREE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "boostlex/common.h"
#include "boostlex/features.h"
#include "boostlex/gbt/matrix.h"
#include "boostlex/gbt/objective.h"

namespace boostlex::gbt {

struct TrainParams {
  int rounds = 200;
  double eta = 0.1;
  int max_depth = 6;
  double min_child_weight = 1.0;
  double lambda = 1.0;
  double gamma = 0.0;
  ClassVector class_weights{1.0, 1.0, 1.0};
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the first violated bound.
  void validate() const;

  nlohmann::json to_json() const;
  static TrainParams from_json(const nlohmann::json& j);
};

// Regularized Newton step: -G / (H + lambda). Unshrunk.
double leaf_weight(double grad_sum, double hess_sum, const TrainParams& params);

// 1/2 [GL^2/(HL+l) + GR^2/(HR+l) - (GL+GR)^2/(HL+HR+l)] - gamma.
double split_gain(double gl, double hl, double gr, double hr, const TrainParams& params);

// Split node when feature >= 0, leaf otherwise. A present value goes left
// when value < threshold; a missing one follows default_left. Leaf weights
// are stored after shrinkage. cover is the Hessian sum of the training rows
// routed through the node.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0;
  bool default_left = false;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double leaf = 0;
  double cover = 0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

// Flat regression tree; node 0 is the root.
struct Tree {
  std::vector<TreeNode> nodes;

  bool operator==(const Tree&) const = default;

  std::size_t num_leaves() const;
  int depth() const;

  // Next node for a row exposing `std::optional<double> get(uint32_t)`.
  template <typename Row>
  std::int32_t child(std::int32_t node, const Row& row) const {
    const auto& n = nodes[static_cast<std::size_t>(node)];
    const auto v = row.get(static_cast<std::uint32_t>(n.feature));
    const bool go_left = v ? *v < n.threshold : n.default_left;
    return go_left ? n.left : n.right;
  }

  template <typename Row>
  std::int32_t leaf_index(const Row& row) const {
    std::int32_t node = 0;
    while (!nodes[static_cast<std::size_t>(node)].is_leaf()) node = child(node, row);
    return node;
  }

  template <typename Row>
  double predict(const Row& row) const {
    return nodes[static_cast<std::size_t>(leaf_index(row))].leaf;
  }

  // Throws DataError on dangling children, split features >= dimension, or
  // nonpositive cover.
  void validate(std::size_t feature_dimension) const;

  // Nested-object form: {feature, threshold, default_left, cover, left,
  // right} for splits and {leaf, cover} for leaves.
  nlohmann::json to_json() const;
  static Tree from_json(const nlohmann::json& j);
};

// Single-leaf tree.
Tree constant_tree(double value, double cover);

}  // namespace boostlex::gbt

#endif  // BOOSTLEX_GBT_TREE_H_
