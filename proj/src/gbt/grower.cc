#include "boostlex/gbt/grower.h"

#include <omp.h>

#include <stdexcept>
#include <vector>

namespace boostlex::gbt {
namespace {

struct NodeStats {
  double grad = 0;
  double hess = 0;
  std::size_t count = 0;
};

struct ScanState {
  double grad = 0;
  double hess = 0;
  std::size_t count = 0;
  double last = 0;
  double first = 0;
  std::int32_t stamp = -1;
};

void check_inputs(std::size_t rows, std::span<const double> g, std::span<const double> h) {
  if (rows == 0) throw std::invalid_argument("cannot grow a tree on zero rows");
  if (g.size() != rows || h.size() != rows) throw std::invalid_argument("gradient length differs from row count");
}

// Sums g/h per node over rows in index order.
std::vector<NodeStats> node_stats(std::span<const std::int32_t> node_of_row, std::span<const double> g,
                                  std::span<const double> h, std::size_t num_nodes) {
  std::vector<NodeStats> stats(num_nodes);
  for (std::size_t r = 0; r < node_of_row.size(); ++r) {
    const auto n = node_of_row[r];
    if (n < 0) continue;
    auto& s = stats[static_cast<std::size_t>(n)];
    s.grad += g[r];
    s.hess += h[r];
    ++s.count;
  }
  return stats;
}

}  // namespace

Tree grow_tree(const FeatureMatrix& matrix, const ColumnIndex& columns, std::span<const double> g,
               std::span<const double> h, const TrainParams& params) {
  const std::size_t n = matrix.num_rows();
  check_inputs(n, g, h);
  const std::size_t num_features = matrix.num_features();

  Tree tree;
  tree.nodes.emplace_back();
  std::vector<std::int32_t> node_of_row(n, 0);
  std::vector<NodeStats> stats = node_stats(node_of_row, g, h, 1);
  std::vector<std::int32_t> frontier{0};

  auto make_leaf = [&](std::int32_t id) {
    auto& node = tree.nodes[static_cast<std::size_t>(id)];
    const auto& s = stats[static_cast<std::size_t>(id)];
    node.feature = -1;
    node.leaf = leaf_weight(s.grad, s.hess, params) * params.eta;
    node.cover = s.hess;
  };

  for (int depth = 0; !frontier.empty(); ++depth) {
    if (depth >= params.max_depth) {
      for (auto id : frontier) make_leaf(id);
      break;
    }
    std::vector<std::int32_t> slot_of_node(tree.nodes.size(), -1);
    for (std::size_t s = 0; s < frontier.size(); ++s) slot_of_node[static_cast<std::size_t>(frontier[s])] = static_cast<std::int32_t>(s);

    const int threads = omp_get_max_threads();
    std::vector<std::vector<SplitCandidate>> thread_best(static_cast<std::size_t>(threads),
                                                         std::vector<SplitCandidate>(frontier.size()));

#pragma omp parallel num_threads(threads)
    {
      auto& best = thread_best[static_cast<std::size_t>(omp_get_thread_num())];
      std::vector<ScanState> scan(frontier.size());
      std::vector<ScanState> present(frontier.size());
      auto consider = [&](std::size_t slot, std::int32_t f, double thr, bool default_left, double gl, double hl,
                           double gr, double hr) {
        if (hl < params.min_child_weight || hr < params.min_child_weight) return;
        const double gain = split_gain(gl, hl, gr, hr, params);
        if (!(gain > 0)) return;
        const SplitCandidate c{f, thr, default_left, gain};
        if (c.beats(best[slot])) best[slot] = c;
      };

#pragma omp for schedule(dynamic, 64)
      for (std::int64_t fi = 0; fi < static_cast<std::int64_t>(num_features); ++fi) {
        const auto f = static_cast<std::int32_t>(fi);
        const auto col = columns.column(static_cast<std::size_t>(f));
        if (col.empty()) continue;

        // Ascending: present values < threshold left, missing right.
        for (const auto& e : col) {
          const auto node = node_of_row[e.row];
          if (node < 0) continue;
          const auto slot = slot_of_node[static_cast<std::size_t>(node)];
          if (slot < 0) continue;
          auto& st = scan[static_cast<std::size_t>(slot)];
          if (st.stamp != f) st = ScanState{0, 0, 0, e.value, e.value, f};
          const auto& ns = stats[static_cast<std::size_t>(node)];
          if (st.count > 0 && e.value != st.last) {
            consider(static_cast<std::size_t>(slot), f, split_threshold(st.last, e.value), false, st.grad, st.hess,
                     ns.grad - st.grad, ns.hess - st.hess);
          }
          st.grad += g[e.row];
          st.hess += h[e.row];
          ++st.count;
          st.last = e.value;
        }
        for (std::size_t s = 0; s < frontier.size(); ++s) {
          present[s] = scan[s].stamp == f ? scan[s] : ScanState{};
        }

        // Descending: present values >= threshold right, missing left.
        for (auto it = col.rbegin(); it != col.rend(); ++it) {
          const auto& e = *it;
          const auto node = node_of_row[e.row];
          if (node < 0) continue;
          const auto slot = slot_of_node[static_cast<std::size_t>(node)];
          if (slot < 0) continue;
          const auto& ns = stats[static_cast<std::size_t>(node)];
          if (present[static_cast<std::size_t>(slot)].count == ns.count) continue;
          auto& st = scan[static_cast<std::size_t>(slot)];
          if (st.stamp != -f - 2) st = ScanState{0, 0, 0, e.value, e.value, -f - 2};
          if (st.count > 0 && e.value != st.last) {
            consider(static_cast<std::size_t>(slot), f, split_threshold(e.value, st.last), true, ns.grad - st.grad,
                     ns.hess - st.hess, st.grad, st.hess);
          }
          st.grad += g[e.row];
          st.hess += h[e.row];
          ++st.count;
          st.last = e.value;
        }

        // Present vs missing.
        for (std::size_t s = 0; s < frontier.size(); ++s) {
          const auto& p = present[s];
          const auto& ns = stats[static_cast<std::size_t>(frontier[s])];
          if (p.count == 0 || p.count == ns.count) continue;
          consider(s, f, p.first, true, ns.grad - p.grad, ns.hess - p.hess, p.grad, p.hess);
        }
      }
    }

    std::vector<SplitCandidate> chosen(frontier.size());
    for (const auto& tb : thread_best) {
      for (std::size_t s = 0; s < frontier.size(); ++s) {
        if (tb[s].beats(chosen[s])) chosen[s] = tb[s];
      }
    }

    std::vector<std::int32_t> next;
    for (std::size_t s = 0; s < frontier.size(); ++s) {
      const auto id = frontier[s];
      if (!chosen[s].valid()) {
        make_leaf(id);
        continue;
      }
      const auto left = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      auto& node = tree.nodes[static_cast<std::size_t>(id)];
      node.feature = chosen[s].feature;
      node.threshold = chosen[s].threshold;
      node.default_left = chosen[s].default_left;
      node.left = left;
      node.right = left + 1;
      node.cover = stats[static_cast<std::size_t>(id)].hess;
      next.push_back(left);
      next.push_back(left + 1);
    }

    for (std::size_t r = 0; r < n; ++r) {
      auto& node = node_of_row[r];
      if (node < 0) continue;
      const auto& tn = tree.nodes[static_cast<std::size_t>(node)];
      node = tn.is_leaf() ? -1 : tree.child(node, matrix.row(r));
    }
    stats = node_stats(node_of_row, g, h, tree.nodes.size());
    frontier = std::move(next);
  }
  return tree;
}

bool same_structure(const Tree& a, const Tree& b) {
  if (a.nodes.empty() || b.nodes.empty()) return a.nodes.empty() && b.nodes.empty();
  return a.to_json() == b.to_json();
}

}  // namespace boostlex::gbt
