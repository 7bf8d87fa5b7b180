#include "boostlex/gbt/tree.h"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace boostlex::gbt {

void TrainParams::validate() const {
  if (rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (!(min_child_weight >= 0.0)) throw std::invalid_argument("min_child_weight must be >= 0");
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  for (double w : class_weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("class weights must be positive");
  }
}

nlohmann::json TrainParams::to_json() const {
  return {{"rounds", rounds},
          {"eta", eta},
          {"max_depth", max_depth},
          {"min_child_weight", min_child_weight},
          {"lambda", lambda},
          {"gamma", gamma},
          {"class_weights", class_weights},
          {"seed", seed}};
}

TrainParams TrainParams::from_json(const nlohmann::json& j) {
  TrainParams p;
  p.rounds = j.at("rounds").get<int>();
  p.eta = j.at("eta").get<double>();
  p.max_depth = j.at("max_depth").get<int>();
  p.min_child_weight = j.at("min_child_weight").get<double>();
  p.lambda = j.at("lambda").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.class_weights = j.at("class_weights").get<ClassVector>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

double leaf_weight(double grad_sum, double hess_sum, const TrainParams& params) {
  const double denom = hess_sum + params.lambda;
  return denom > 0 ? -grad_sum / denom : 0.0;
}

double split_gain(double gl, double hl, double gr, double hr, const TrainParams& params) {
  auto score = [&](double g, double h) {
    const double denom = h + params.lambda;
    return denom > 0 ? g * g / denom : 0.0;
  };
  return 0.5 * (score(gl, hl) + score(gr, hr) - score(gl + gr, hl + hr)) - params.gamma;
}

std::size_t Tree::num_leaves() const {
  std::size_t n = 0;
  for (const auto& node : nodes) n += node.is_leaf() ? 1 : 0;
  return n;
}

int Tree::depth() const {
  std::function<int(std::int32_t)> walk = [&](std::int32_t i) -> int {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    return n.is_leaf() ? 0 : 1 + std::max(walk(n.left), walk(n.right));
  };
  return nodes.empty() ? 0 : walk(0);
}

void Tree::validate(std::size_t feature_dimension) const {
  if (nodes.empty()) throw DataError("tree has no nodes");
  const auto count = static_cast<std::int32_t>(nodes.size());
  for (const auto& n : nodes) {
    if (!(n.cover > 0) || !std::isfinite(n.cover)) throw DataError("tree node with nonpositive cover");
    if (n.is_leaf()) continue;
    if (static_cast<std::size_t>(n.feature) >= feature_dimension) {
      throw DataError("split feature " + std::to_string(n.feature) + " exceeds the feature dimension");
    }
    if (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count) {
      throw DataError("tree node with dangling child");
    }
  }
}

nlohmann::json Tree::to_json() const {
  std::function<nlohmann::json(std::int32_t)> emit = [&](std::int32_t i) {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    if (n.is_leaf()) return nlohmann::json{{"leaf", n.leaf}, {"cover", n.cover}};
    return nlohmann::json{{"feature", n.feature},     {"threshold", n.threshold}, {"default_left", n.default_left},
                          {"cover", n.cover},         {"left", emit(n.left)},     {"right", emit(n.right)}};
  };
  return emit(0);
}

Tree Tree::from_json(const nlohmann::json& j) {
  Tree tree;
  std::function<std::int32_t(const nlohmann::json&, int)> read = [&](const nlohmann::json& node, int depth) {
    if (depth > 256) throw DataError("tree nesting too deep");
    const auto id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    TreeNode n;
    n.cover = node.at("cover").get<double>();
    if (node.contains("leaf")) {
      n.leaf = node.at("leaf").get<double>();
    } else {
      n.feature = node.at("feature").get<std::int32_t>();
      if (n.feature < 0) throw DataError("negative split feature");
      n.threshold = node.at("threshold").get<double>();
      n.default_left = node.at("default_left").get<bool>();
      n.left = read(node.at("left"), depth + 1);
      n.right = read(node.at("right"), depth + 1);
    }
    tree.nodes[static_cast<std::size_t>(id)] = n;
    return id;
  };
  read(j, 0);
  return tree;
}

Tree constant_tree(double value, double cover) {
  Tree t;
  TreeNode n;
  n.leaf = value;
  n.cover = cover;
  t.nodes.push_back(n);
  return t;
}

}  // namespace boostlex::gbt
