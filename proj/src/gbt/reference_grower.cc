#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "boostlex/gbt/grower.h"

namespace boostlex::gbt {

namespace reference {
namespace {

struct Grower {
  const FeatureMatrix& matrix;
  std::span<const double> g;
  std::span<const double> h;
  const TrainParams& params;
  Tree tree;

  std::int32_t grow(const std::vector<std::uint32_t>& rows, int depth) {
    double grad = 0, hess = 0;
    for (auto r : rows) {
      grad += g[r];
      hess += h[r];
    }
    const auto id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes.back().cover = hess;

    SplitCandidate best;
    if (depth < params.max_depth) {
      for (std::size_t f = 0; f < matrix.num_features(); ++f) {
        const auto fid = static_cast<std::int32_t>(f);
        std::vector<std::pair<double, std::uint32_t>> present;
        for (auto r : rows) {
          if (const auto v = matrix.row(r).get(static_cast<std::uint32_t>(f))) present.emplace_back(*v, r);
        }
        if (present.empty()) continue;
        std::sort(present.begin(), present.end());
        auto consider = [&](double thr, bool default_left, double gl, double hl, double gr, double hr) {
          if (hl < params.min_child_weight || hr < params.min_child_weight) return;
          const double gain = split_gain(gl, hl, gr, hr, params);
          if (!(gain > 0)) return;
          const SplitCandidate c{fid, thr, default_left, gain};
          if (c.beats(best)) best = c;
        };

        double pg = 0, ph = 0;
        for (std::size_t i = 0; i < present.size(); ++i) {
          if (i > 0 && present[i].first != present[i - 1].first) {
            consider(split_threshold(present[i - 1].first, present[i].first), false, pg, ph, grad - pg, hess - ph);
          }
          pg += g[present[i].second];
          ph += h[present[i].second];
        }
        if (present.size() == rows.size()) continue;

        double sg = 0, sh = 0;
        for (std::size_t i = present.size(); i-- > 0;) {
          if (i + 1 < present.size() && present[i].first != present[i + 1].first) {
            consider(split_threshold(present[i].first, present[i + 1].first), true, grad - sg, hess - sh, sg, sh);
          }
          sg += g[present[i].second];
          sh += h[present[i].second];
        }
        consider(present.front().first, true, grad - pg, hess - ph, pg, ph);
      }
    }

    if (!best.valid()) {
      tree.nodes[static_cast<std::size_t>(id)].leaf = leaf_weight(grad, hess, params) * params.eta;
      return id;
    }
    TreeNode split;
    split.feature = best.feature;
    split.threshold = best.threshold;
    split.default_left = best.default_left;
    split.cover = hess;
    tree.nodes[static_cast<std::size_t>(id)] = split;
    std::vector<std::uint32_t> left_rows, right_rows;
    for (auto r : rows) {
      const auto v = matrix.row(r).get(static_cast<std::uint32_t>(best.feature));
      const bool go_left = v ? *v < best.threshold : best.default_left;
      (go_left ? left_rows : right_rows).push_back(r);
    }
    const auto left = grow(left_rows, depth + 1);
    const auto right = grow(right_rows, depth + 1);
    tree.nodes[static_cast<std::size_t>(id)].left = left;
    tree.nodes[static_cast<std::size_t>(id)].right = right;
    return id;
  }
};

}  // namespace

Tree grow_tree(const FeatureMatrix& matrix, std::span<const double> g, std::span<const double> h,
               const TrainParams& params) {
  if (matrix.num_rows() == 0) throw std::invalid_argument("cannot grow a tree on zero rows");
  if (g.size() != matrix.num_rows() || h.size() != matrix.num_rows()) {
    throw std::invalid_argument("gradient length differs from row count");
  }
  Grower grower{matrix, g, h, params, {}};
  std::vector<std::uint32_t> rows(matrix.num_rows());
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = static_cast<std::uint32_t>(r);
  grower.grow(rows, 0);
  return std::move(grower.tree);
}

}  // namespace reference

}  // namespace boostlex::gbt
