#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <functional>

#include "boostlex/gbt/ensemble.h"
#include "boostlex/gbt/grower.h"
#include "boostlex/gbt/matrix.h"
#include "boostlex/gbt/objective.h"
#include "gbt_fixtures.h"
#include "test_util.h"

namespace boostlex::gbt {
namespace {

using boostlex::testing::random_rows;
using boostlex::testing::separable_data;

TEST(Objective, BalancedWeights) {
  // Counts in class order (hate, offensive, neither).
  const auto w = balanced_class_weights({5006, 27229, 53731});
  EXPECT_NEAR(w[0], 5.7241976295, 1e-9);
  EXPECT_NEAR(w[1], 1.0523828761, 1e-9);
  EXPECT_NEAR(w[2], 0.5333109999, 1e-9);
  const auto eq = balanced_class_weights({7, 7, 7});
  for (double x : eq) EXPECT_DOUBLE_EQ(x, 1.0);
  const auto small = balanced_class_weights({1, 1, 2});
  EXPECT_DOUBLE_EQ(small[0], 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(small[2], 2.0 / 3.0);
  EXPECT_THROW(balanced_class_weights({0, 1, 1}), std::invalid_argument);
}

TEST(Objective, GradHessExamples) {
  const std::vector<double> m = {0, 0, 0};
  const std::vector<int> y = {0};
  auto gh = grad_hess_multiclass(m, y, std::vector<double>{1.0});
  EXPECT_NEAR(gh.g[0], -2.0 / 3, 1e-15);
  EXPECT_NEAR(gh.g[1], 1.0 / 3, 1e-15);
  for (double h : gh.h) EXPECT_NEAR(h, 2.0 / 9, 1e-15);
  auto gh2 = grad_hess_multiclass(m, y, std::vector<double>{2.0});
  for (int k = 0; k < 3; ++k) {
    EXPECT_DOUBLE_EQ(gh2.g[k], 2 * gh.g[k]);
    EXPECT_DOUBLE_EQ(gh2.h[k], 2 * gh.h[k]);
  }
  const std::vector<double> sat = {50, -50, -50};
  auto gs = grad_hess_multiclass(sat, y, std::vector<double>{1.0});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(gs.g[k], 0.0, 1e-40);
  EXPECT_EQ(gs.h[0], kHessianFloor);
  const std::vector<double> bad = {std::nan(""), 0, 0};
  EXPECT_THROW(grad_hess_multiclass(bad, y, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Objective, FiniteDifferences) {
  Pcg32 rng(11);
  const double step = 1e-4;
  for (int draw = 0; draw < 100; ++draw) {
    std::vector<double> m(3);
    for (auto& x : m) x = rng.uniform() * 6 - 3;
    const std::vector<int> y = {static_cast<int>(rng.bounded(3))};
    const std::vector<double> w = {0.1 + rng.uniform() * 5};
    const auto gh = grad_hess_multiclass(m, y, w);
    for (int k = 0; k < 3; ++k) {
      auto plus = m, minus = m;
      plus[k] += step;
      minus[k] -= step;
      const double g_fd = (weighted_softmax_loss(plus, y, w) - weighted_softmax_loss(minus, y, w)) / (2 * step);
      const double h_fd =
          (grad_hess_multiclass(plus, y, w).g[k] - grad_hess_multiclass(minus, y, w).g[k]) / (2 * step);
      EXPECT_LE(std::abs(gh.g[k] - g_fd) / std::abs(gh.g[k]), 1e-5) << draw << " " << k;
      EXPECT_LE(std::abs(gh.h[k] - h_fd) / std::abs(gh.h[k]), 1e-5) << draw << " " << k;
    }
  }
}

TEST(LeafAndGain, Examples) {
  TrainParams p;
  p.lambda = 1;
  EXPECT_DOUBLE_EQ(leaf_weight(-0.5, 0.25, p), 0.4);
  EXPECT_EQ(leaf_weight(0, 3, p), 0.0);
  p.lambda = 0;
  EXPECT_DOUBLE_EQ(leaf_weight(4, 2, p), -2.0);
  EXPECT_DOUBLE_EQ(split_gain(-2, 1, 2, 1, p), 4.0);
  p.gamma = 5;
  EXPECT_DOUBLE_EQ(split_gain(-2, 1, 2, 1, p), -1.0);
  EXPECT_DOUBLE_EQ(split_gain(1.5, 2, 1.5, 2, p), -5.0);
}

TEST(TrainParams, Validation) {
  TrainParams p;
  EXPECT_NO_THROW(p.validate());
  p.eta = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.class_weights[1] = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.max_depth = -1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.rounds = 17;
  p.seed = 4;
  EXPECT_EQ(TrainParams::from_json(p.to_json()).to_json(), p.to_json());
}

FeatureMatrix matrix_of(const std::vector<FeatureVector>& rows, std::size_t dim) { return FeatureMatrix(rows, dim); }

TEST(Grower, StumpHandTrace) {
  std::vector<FeatureVector> rows;
  for (double v : {1.0, 2.0, 3.0, 4.0}) rows.push_back(FeatureVector::dense(std::vector<double>{v}));
  const auto m = matrix_of(rows, 1);
  const std::vector<double> g = {-1, -1, 1, 1}, h = {1, 1, 1, 1};
  TrainParams p;
  p.max_depth = 1;
  p.min_child_weight = 0;
  const auto tree = grow_tree(m, ColumnIndex(m), g, h, p);
  ASSERT_EQ(tree.nodes.size(), 3u);
  const auto& root = tree.nodes[0];
  EXPECT_EQ(root.feature, 0);
  EXPECT_DOUBLE_EQ(root.threshold, 2.5);
  EXPECT_DOUBLE_EQ(root.cover, 4.0);
  // GL = -2, HL = 2: -(-2)/(2+1) * 0.1.
  EXPECT_DOUBLE_EQ(tree.nodes[root.left].leaf, 2.0 / 3.0 * 0.1);
  EXPECT_DOUBLE_EQ(tree.nodes[root.right].leaf, -2.0 / 3.0 * 0.1);
  EXPECT_DOUBLE_EQ(tree.nodes[root.left].cover, 2.0);
}

TEST(Grower, ZeroGradientGivesZeroLeaf) {
  Pcg32 rng(3);
  const auto rows = random_rows(50, 4, 0.3, rng);
  const auto m = matrix_of(rows, 4);
  const std::vector<double> g(50, 0.0), h(50, 0.5);
  const auto tree = grow_tree(m, ColumnIndex(m), g, h, TrainParams{});
  ASSERT_EQ(tree.nodes.size(), 1u);
  EXPECT_EQ(tree.nodes[0].leaf, 0.0);
  EXPECT_DOUBLE_EQ(tree.nodes[0].cover, 25.0);
}

TEST(Grower, DepthZeroIsNewtonStep) {
  Pcg32 rng(5);
  const auto rows = random_rows(40, 3, 0.2, rng);
  const auto m = matrix_of(rows, 3);
  std::vector<double> g(40), h(40);
  double G = 0, H = 0;
  for (std::size_t i = 0; i < 40; ++i) {
    g[i] = rng.uniform() - 0.3;
    h[i] = rng.uniform() + 0.1;
    G += g[i];
    H += h[i];
  }
  TrainParams p;
  p.max_depth = 0;
  const auto tree = grow_tree(m, ColumnIndex(m), g, h, p);
  ASSERT_EQ(tree.nodes.size(), 1u);
  EXPECT_NEAR(tree.nodes[0].leaf, -G / (H + 1) * 0.1, 1e-15);
}

TEST(Grower, EmptyInputThrows) {
  const std::vector<FeatureVector> rows;
  const auto m = matrix_of(rows, 2);
  EXPECT_THROW(grow_tree(m, ColumnIndex(m), {}, {}, TrainParams{}), std::invalid_argument);
}

void check_tree_invariants(const Tree& tree, const std::vector<double>& g, const std::vector<double>& h,
                           const FeatureMatrix& m, const TrainParams& p) {
  for (const auto& n : tree.nodes) {
    EXPECT_GT(n.cover, 0.0);
    if (n.is_leaf()) continue;
    const auto& l = tree.nodes[static_cast<std::size_t>(n.left)];
    const auto& r = tree.nodes[static_cast<std::size_t>(n.right)];
    EXPECT_NEAR(n.cover, l.cover + r.cover, 1e-9);
    EXPECT_GE(l.cover, p.min_child_weight - 1e-12);
    EXPECT_GE(r.cover, p.min_child_weight - 1e-12);
  }
  EXPECT_LE(tree.depth(), p.max_depth);
  // Every accepted split has positive gain, recomputed from routed rows.
  std::vector<std::vector<std::size_t>> at(tree.nodes.size());
  for (std::size_t i = 0; i < m.num_rows(); ++i) {
    std::int32_t node = 0;
    at[0].push_back(i);
    while (!tree.nodes[static_cast<std::size_t>(node)].is_leaf()) {
      node = tree.child(node, m.row(i));
      at[static_cast<std::size_t>(node)].push_back(i);
    }
  }
  auto sums = [&](std::size_t node) {
    double G = 0, H = 0;
    for (auto i : at[node]) {
      G += g[i];
      H += h[i];
    }
    return std::pair{G, H};
  };
  for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
    const auto& n = tree.nodes[k];
    if (n.is_leaf()) {
      const auto [G, H] = sums(k);
      EXPECT_NEAR(n.leaf, leaf_weight(G, H, p) * p.eta, 1e-12);
      continue;
    }
    const auto [GL, HL] = sums(static_cast<std::size_t>(n.left));
    const auto [GR, HR] = sums(static_cast<std::size_t>(n.right));
    EXPECT_GT(split_gain(GL, HL, GR, HR, p), 0.0);
  }
}

TEST(Grower, ParallelMatchesReferenceAndInvariants) {
  Pcg32 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 20 + rng.bounded(200), dim = 1 + rng.bounded(8);
    const auto rows = random_rows(n, dim, 0.1 + 0.6 * rng.uniform(), rng);
    const auto m = matrix_of(rows, dim);
    std::vector<double> g(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = rng.uniform() * 2 - 1;
      h[i] = rng.uniform() * 0.3 + 1e-3;
    }
    TrainParams p;
    p.max_depth = static_cast<int>(rng.bounded(7));
    p.min_child_weight = rng.uniform() * 2;
    p.lambda = rng.uniform() * 2;
    p.gamma = trial % 3 == 0 ? rng.uniform() * 0.2 : 0.0;
    const auto fast = grow_tree(m, ColumnIndex(m), g, h, p);
    const auto slow = reference::grow_tree(m, g, h, p);
    EXPECT_TRUE(same_structure(fast, slow)) << "trial " << trial;
    fast.validate(dim);
    check_tree_invariants(fast, g, h, m, p);
  }
}

// Walks the serialized nested form directly.
double walk_json(const nlohmann::json& node, const FeatureVector& x) {
  if (node.contains("leaf")) return node["leaf"].get<double>();
  const auto v = x.get(node["feature"].get<std::uint32_t>());
  const bool left = v ? *v < node["threshold"].get<double>() : node["default_left"].get<bool>();
  return walk_json(node[left ? "left" : "right"], x);
}

class Trained : public ::testing::Test {
 protected:
  void SetUp() override {
    Pcg32 rng(8);
    rows_ = random_rows(300, 6, 0.4, rng);
    for (const auto& r : rows_) {
      const double a = r.value_or_zero(0) + r.value_or_zero(1);
      labels_.push_back(a > 1 ? 0 : (r.get(2) ? 1 : 2));
      if (rng.uniform() < 0.1) labels_.back() = static_cast<int>(rng.bounded(3));
    }
    params_.rounds = 15;
    params_.max_depth = 4;
    params_.class_weights = {2.0, 1.0, 0.7};
  }
  TreeEnsemble train_model(TrainingLog* log = nullptr) const {
    return train(FeatureMatrix(rows_, 6), labels_, params_, log);
  }
  std::vector<FeatureVector> rows_;
  std::vector<int> labels_;
  TrainParams params_;
};

TEST_F(Trained, LossIsMonotone) {
  TrainingLog log;
  params_.rounds = 50;
  train_model(&log);
  ASSERT_EQ(log.loss.size(), 51u);
  for (std::size_t i = 1; i < log.loss.size(); ++i) EXPECT_LE(log.loss[i], log.loss[i - 1]) << "round " << i;
}

TEST_F(Trained, PredictionAdditivity) {
  const auto model = train_model();
  EXPECT_EQ(model.num_trees(), 45u);
  const auto j = model.to_json();
  for (const auto& x : rows_) {
    const auto p = model.predict(x);
    for (int k = 0; k < 3; ++k) {
      double margin = model.base_score;
      for (const auto& round : j["trees"]) margin += walk_json(round[k], x);
      EXPECT_EQ(p.margins[k], margin);
    }
    EXPECT_NEAR(p.probabilities[0] + p.probabilities[1] + p.probabilities[2], 1.0, 1e-12);
    EXPECT_EQ(p.label, argmax(p.margins));
  }
  EXPECT_THROW(model.predict(FeatureVector(5)), std::invalid_argument);
}

TEST_F(Trained, BatchMatchesSingle) {
  const auto model = train_model();
  const auto batch = model.predict_batch(rows_);
  for (std::size_t i = 0; i < rows_.size(); ++i) EXPECT_EQ(batch[i].margins, model.predict(rows_[i]).margins);
}

TEST_F(Trained, MonotoneTransformKeepsLabels) {
  const auto model = train_model();
  std::vector<FeatureVector> warped;
  for (const auto& r : rows_) {
    std::vector<FeatureVector::Entry> e;
    for (auto [c, v] : r.entries()) e.emplace_back(c, c % 2 ? std::exp(v) : 3 * v * v * v + v + 10);
    warped.emplace_back(6, e);
  }
  const auto other = train(FeatureMatrix(warped, 6), labels_, params_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    EXPECT_EQ(model.predict(rows_[i]).label, other.predict(warped[i]).label);
  }
}

TEST_F(Trained, RoundTripIsBitExact) {
  const auto model = train_model();
  const auto dir = boostlex::testing::temp_dir();
  model.save(dir / "m.json");
  const auto back = TreeEnsemble::load(dir / "m.json");
  Pcg32 rng(99);
  const auto probes = random_rows(100, 6, 0.3, rng);
  for (const auto& x : probes) {
    const auto a = model.predict(x), b = back.predict(x);
    EXPECT_EQ(a.margins, b.margins);
    EXPECT_EQ(a.probabilities, b.probabilities);
  }
  back.save(dir / "m2.json");
  EXPECT_EQ(boostlex::testing::read_text(dir / "m.json"), boostlex::testing::read_text(dir / "m2.json"));
}

TEST_F(Trained, VersionAndTruncationErrors) {
  const auto model = train_model();
  const auto dir = boostlex::testing::temp_dir();
  auto j = model.to_json();
  j["format_version"] = 99;
  boostlex::testing::write_text(dir / "v99.json", j.dump());
  try {
    TreeEnsemble::load(dir / "v99.json");
    FAIL() << "expected a version error";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos) << e.what();
  }
  model.save(dir / "m.json");
  const auto text = boostlex::testing::read_text(dir / "m.json");
  boostlex::testing::write_text(dir / "cut.json", text.substr(0, text.size() / 2));
  try {
    TreeEnsemble::load(dir / "cut.json");
    FAIL() << "expected a parse error";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos) << e.what();
  }
  EXPECT_THROW(TreeEnsemble::load(dir / "absent.json"), DataError);
}

TEST_F(Trained, Deterministic) {
  EXPECT_EQ(train_model().to_json().dump(), train_model().to_json().dump());
}

TEST(Ensemble, ZeroRoundsIsUniform) {
  Pcg32 rng(2);
  const auto rows = random_rows(30, 3, 0.2, rng);
  std::vector<int> labels(30, 0);
  TrainParams p;
  p.rounds = 0;
  const auto model = train(FeatureMatrix(rows, 3), labels, p);
  for (const auto& x : rows) {
    for (double q : model.predict(x).probabilities) EXPECT_DOUBLE_EQ(q, 1.0 / 3);
    EXPECT_EQ(model.predict(x).label, 0);
  }
}

TEST(Ensemble, HandBuiltAdditivity) {
  TreeEnsemble model;
  model.feature_dimension = 2;
  model.base_score = 0.25;
  model.rounds.push_back({constant_tree(0.3, 1), constant_tree(0, 1), constant_tree(0, 1)});
  const auto p = model.predict(FeatureVector(2));
  EXPECT_DOUBLE_EQ(p.margins[0], 0.55);
  EXPECT_DOUBLE_EQ(p.margins[1], 0.25);
  EXPECT_EQ(p.label, 0);
}

TEST(Ensemble, ArgmaxTies) {
  EXPECT_EQ(argmax({1, 1, 1}), 0);
  EXPECT_EQ(argmax({0, 2, 2}), 1);
}

TEST(Ensemble, SeparableConverges) {
  Pcg32 rng(17);
  std::vector<FeatureVector> rows;
  std::vector<int> labels;
  separable_data(600, rng, rows, labels);
  TrainParams p;
  p.rounds = 20;
  const auto model = train(FeatureMatrix(rows, 3), labels, p);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) correct += model.predict(rows[i]).label == labels[i];
  EXPECT_GE(static_cast<double>(correct) / rows.size(), 0.99);
}

TEST(Ensemble, TrainErrors) {
  const std::vector<FeatureVector> none;
  EXPECT_THROW(train(FeatureMatrix(none, 2), {}, TrainParams{}), std::invalid_argument);
  const std::vector<FeatureVector> one = {FeatureVector(2)};
  EXPECT_THROW(train(FeatureMatrix(one, 2), std::vector<int>{3}, TrainParams{}), std::invalid_argument);
}

TEST(Ensemble, FingerprintCheck) {
  TreeEnsemble model;
  model.registry_fingerprint = "0000000000000000";
  FeatureRegistry r;
  r.add_block(BlockKind::kDense, {"a"});
  EXPECT_THROW(model.check_fingerprint(r), DataError);
  model.registry_fingerprint = r.fingerprint();
  EXPECT_NO_THROW(model.check_fingerprint(r));
}

TEST(Tree, ValidateRejectsBadStructure) {
  Tree t;
  t.nodes.push_back({0, 0.5, false, 1, 2, 0, 2});
  t.nodes.push_back({-1, 0, false, -1, -1, 1, 1});
  EXPECT_THROW(t.validate(1), DataError);
  t.nodes.push_back({-1, 0, false, -1, -1, 2, 1});
  EXPECT_NO_THROW(t.validate(1));
  EXPECT_THROW(t.validate(0), DataError);
  EXPECT_EQ(Tree::from_json(t.to_json()), t);
}

}  // namespace
}  // namespace boostlex::gbt
