#include <gtest/gtest.h>

#include <cmath>

#include "boostlex/explain/report.h"
#include "boostlex/explain/shap.h"
#include "boostlex/gbt/ensemble.h"
#include "gbt_fixtures.h"
#include "shap_fixtures.h"

namespace boostlex::explain {
namespace {

using gbt::Tree;
using gbt::TreeNode;

// Stump on feature 0: left (x < 1) covers 1 with value 1, right covers 3 with value 3.
Tree stump() {
  Tree t;
  t.nodes.push_back({0, 1.0, true, 1, 2, 0, 4});
  t.nodes.push_back({-1, 0, false, -1, -1, 1.0, 1});
  t.nodes.push_back({-1, 0, false, -1, -1, 3.0, 3});
  return t;
}

TEST(TreeShap, SingleLeaf) {
  const auto t = gbt::constant_tree(0.7, 5);
  std::vector<double> phi(3, 0.0);
  EXPECT_DOUBLE_EQ(tree_shap(t, FeatureVector(3), phi), 0.7);
  for (double p : phi) EXPECT_EQ(p, 0.0);
  for (double p : brute_force_shapley(t, FeatureVector(3), 3)) EXPECT_EQ(p, 0.0);
}

TEST(TreeShap, StumpExample) {
  const FeatureVector x(2, {{0, 5.0}});
  std::vector<double> phi(2, 0.0);
  EXPECT_DOUBLE_EQ(tree_shap(stump(), x, phi), 2.5);
  EXPECT_DOUBLE_EQ(phi[0], 0.5);
  EXPECT_EQ(phi[1], 0.0);
  EXPECT_DOUBLE_EQ(brute_force_shapley(stump(), x, 2)[0], 0.5);
}

TEST(TreeShap, TwoFeatureHandEnumeration) {
  // Root splits f0 at 0 (covers 2 | 6); left leaf 4; right splits f1 at 0 (covers 2 | 4) with leaves -1, 2.
  Tree t;
  t.nodes.push_back({0, 0.0, false, 1, 2, 0, 8});
  t.nodes.push_back({-1, 0, false, -1, -1, 4.0, 2});
  t.nodes.push_back({1, 0.0, false, 3, 4, 0, 6});
  t.nodes.push_back({-1, 0, false, -1, -1, -1.0, 2});
  t.nodes.push_back({-1, 0, false, -1, -1, 2.0, 4});
  const FeatureVector x(2, {{0, 1.0}, {1, 1.0}});
  // v({}) = (2*4 + 6*1)/8 = 1.75; v({0}) = 1; v({1}) = (2*4 + 6*2)/8 = 2.5; v({0,1}) = 2.
  const double phi0 = 0.5 * ((1.0 - 1.75) + (2.0 - 2.5));
  const double phi1 = 0.5 * ((2.5 - 1.75) + (2.0 - 1.0));
  const auto bf = brute_force_shapley(t, x, 2);
  EXPECT_NEAR(bf[0], phi0, 1e-15);
  EXPECT_NEAR(bf[1], phi1, 1e-15);
  std::vector<double> phi(2, 0.0);
  EXPECT_DOUBLE_EQ(tree_shap(t, x, phi), 1.75);
  EXPECT_NEAR(phi[0], phi0, 1e-12);
  EXPECT_NEAR(phi[1], phi1, 1e-12);
}

TEST(TreeShap, MatchesBruteForceOnRandomTrees) {
  Pcg32 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t features = 1 + rng.bounded(6);
    const auto tree = boostlex::testing::random_tree(rng, 1 + static_cast<int>(rng.bounded(4)), features);
    const auto x = boostlex::testing::random_instance(rng, features);
    std::vector<double> phi(features, 0.0);
    const double expected = tree_shap(tree, x, phi);
    const auto bf = brute_force_shapley(tree, x, features);
    double total = expected;
    for (std::uint32_t f = 0; f < features; ++f) {
      EXPECT_NEAR(phi[f], bf[f], 1e-9) << "trial " << trial << " feature " << f;
      total += phi[f];
    }
    EXPECT_NEAR(total, tree.predict(x), 1e-9);
  }
}

TEST(TreeShap, DummyFeatureIsExactlyZero) {
  Pcg32 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tree = boostlex::testing::random_tree(rng, 4, 4);
    const auto x = boostlex::testing::random_instance(rng, 6);
    std::vector<double> phi(6, 0.0);
    tree_shap(tree, x, phi);
    EXPECT_EQ(phi[4], 0.0);
    EXPECT_EQ(phi[5], 0.0);
  }
}

TEST(TreeShap, SymmetryOfDuplicatedColumns) {
  // Features 0 and 1 hold the same value; the tree splits on each at the
  // same threshold with mirrored structure.
  Tree t;
  t.nodes.push_back({0, 0.5, false, 1, 2, 0, 8});
  t.nodes.push_back({1, 0.5, false, 3, 4, 0, 4});
  t.nodes.push_back({1, 0.5, false, 5, 6, 0, 4});
  t.nodes.push_back({-1, 0, false, -1, -1, 1.0, 2});
  t.nodes.push_back({-1, 0, false, -1, -1, 2.0, 2});
  t.nodes.push_back({-1, 0, false, -1, -1, 2.0, 2});
  t.nodes.push_back({-1, 0, false, -1, -1, 5.0, 2});
  for (double v : {0.0, 1.0}) {
    const FeatureVector x(3, {{0, v}, {1, v}});
    const auto bf = brute_force_shapley(t, x, 3);
    EXPECT_NEAR(bf[0], bf[1], 1e-9);
    std::vector<double> phi(3, 0.0);
    tree_shap(t, x, phi);
    EXPECT_NEAR(phi[0], phi[1], 1e-9);
  }
}

TEST(TreeShap, Errors) {
  auto t = stump();
  t.nodes[1].cover = 0;
  std::vector<double> phi(2, 0.0);
  EXPECT_THROW(tree_shap(t, FeatureVector(2), phi), std::invalid_argument);
  std::vector<double> tiny;
  EXPECT_THROW(tree_shap(stump(), FeatureVector(2), tiny), std::invalid_argument);
  // A spine over 21 distinct features: split 2f goes left to the next split.
  Tree wide;
  for (int f = 0; f < 21; ++f) {
    wide.nodes.push_back({f, 0.0, false, 2 * f + 2, 2 * f + 1, 0, 1});
    wide.nodes.push_back({-1, 0, false, -1, -1, 0, 0.5});
  }
  wide.nodes.push_back({-1, 0, false, -1, -1, 0, 0.5});
  EXPECT_THROW(brute_force_shapley(wide, FeatureVector(21), 21), std::invalid_argument);
}

class ExplainModel : public ::testing::Test {
 protected:
  void SetUp() override {
    Pcg32 rng(31);
    rows_ = boostlex::testing::random_rows(200, 5, 0.3, rng);
    std::vector<int> labels;
    for (const auto& r : rows_) labels.push_back(r.value_or_zero(0) > 0 ? 0 : (r.get(1) ? 1 : 2));
    gbt::TrainParams p;
    p.rounds = 10;
    p.max_depth = 3;
    model_ = gbt::train(gbt::FeatureMatrix(rows_, 5), labels, p);
  }
  std::vector<FeatureVector> rows_;
  gbt::TreeEnsemble model_;
};

TEST_F(ExplainModel, LocalAccuracyAndAdditivity) {
  for (const auto& x : rows_) {
    const auto margins = model_.predict(x).margins;
    for (int c = 0; c < 3; ++c) {
      const auto a = explain_instance(model_, x, c);
      double total = a.base_value;
      for (double p : a.phi) total += p;
      EXPECT_NEAR(total, margins[c], 1e-9);
      EXPECT_EQ(a.output, margins[c]);
      std::vector<double> direct(5, 0.0);
      double base = model_.base_score;
      for (const auto& round : model_.rounds) base += tree_shap(round[static_cast<std::size_t>(c)], x, direct);
      EXPECT_EQ(a.phi, direct);
      EXPECT_EQ(a.base_value, base);
    }
  }
  EXPECT_THROW(explain_instance(model_, rows_[0], 3), std::invalid_argument);
  EXPECT_THROW(explain_instance(model_, FeatureVector(4), 0), std::invalid_argument);
}

TEST_F(ExplainModel, BatchMatchesSingle) {
  std::vector<int> classes(rows_.size(), 1);
  const auto batch = explain_batch(model_, rows_, classes);
  for (std::size_t i = 0; i < rows_.size(); ++i) EXPECT_EQ(batch[i].phi, explain_instance(model_, rows_[i], 1).phi);
}

TEST(Explain, ZeroRoundModel) {
  gbt::TreeEnsemble model;
  model.feature_dimension = 3;
  model.base_score = 0.2;
  const auto a = explain_instance(model, FeatureVector(3, {{1, 4.0}}), 2);
  EXPECT_EQ(a.base_value, 0.2);
  for (double p : a.phi) EXPECT_EQ(p, 0.0);
  EXPECT_EQ(a.feature_names[1], "f1");
}

Attribution toy_attribution() {
  Attribution a;
  a.phi = {0.0, -0.1, 0.4};
  a.base_value = 0.3;
  a.output = 0.6;
  a.class_index = 0;
  a.feature_names = {"zero", "average-syl", "count"};
  return a;
}

TEST(Report, SortedByMagnitude) {
  const FeatureVector x(3, {{1, 1.5}, {2, 12.0}});
  const auto r = make_force_report(toy_attribution(), x, "t1");
  ASSERT_EQ(r.contributions.size(), 2u);
  EXPECT_EQ(r.contributions[0].name, "count");
  EXPECT_EQ(r.contributions[1].name, "average-syl");
  const auto text = render_report(r);
  EXPECT_NE(text.find("class=hate"), std::string::npos) << text;
  EXPECT_NE(text.find("output=0.6000"), std::string::npos) << text;
  EXPECT_NE(text.find("count=12  phi=+0.4000"), std::string::npos) << text;
  EXPECT_NE(text.find("average-syl=1.5  phi=-0.1000"), std::string::npos) << text;
  EXPECT_LT(text.find("count="), text.find("average-syl="));
  EXPECT_EQ(text.find("zero="), std::string::npos);
}

TEST(Report, TruncationAndEmpty) {
  const FeatureVector x(3);
  const auto r = make_force_report(toy_attribution(), x, "", 1);
  EXPECT_EQ(r.omitted, 1u);
  EXPECT_NE(render_report(r).find("+1 more"), std::string::npos);
  auto zero = toy_attribution();
  zero.phi = {0, 0, 0};
  const auto empty = render_report(make_force_report(zero, x));
  EXPECT_NE(empty.find("no contributing features"), std::string::npos);
  EXPECT_THROW(make_force_report(zero, FeatureVector(2)), std::invalid_argument);
}

TEST(Report, HtmlIsSelfContained) {
  const auto r = make_force_report(toy_attribution(), FeatureVector(3), "<id>", 20, ReportFormat::kHtml);
  const auto html = render_report(r);
  EXPECT_NE(html.find("<html"), std::string::npos);
  EXPECT_NE(html.find("&lt;id&gt;"), std::string::npos);
  EXPECT_EQ(html.find("<script src"), std::string::npos);
  EXPECT_EQ(html.find("<link"), std::string::npos);
  EXPECT_EQ(parse_report_format("html"), ReportFormat::kHtml);
  EXPECT_THROW(parse_report_format("pdf"), UsageError);
}

TEST(Report, MeanAbsPhi) {
  auto a = toy_attribution(), b = toy_attribution();
  b.phi = {0, 0.3, -0.2};
  const std::vector<Attribution> all = {a, b};
  const auto rows = mean_abs_phi(all, 10);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].first, "count");
  EXPECT_DOUBLE_EQ(rows[0].second, 0.3);
  EXPECT_DOUBLE_EQ(rows[1].second, 0.2);
  EXPECT_EQ(mean_abs_phi(all, 1).size(), 1u);
}

}  // namespace
}  // namespace boostlex::explain
