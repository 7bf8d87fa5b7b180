#include <gtest/gtest.h>

#include <set>

#include "boostlex/eval/harness.h"
#include "boostlex/eval/metrics.h"
#include "boostlex/eval/pipeline.h"
#include "boostlex/eval/synthetic.h"
#include "boostlex/rng.h"
#include "boostlex/text/tfidf.h"
#include "eval_fixtures.h"

namespace boostlex::eval {
namespace {

// Independent recount: per-class TP/FP/FN by direct comparison.
EvalReport naive_metrics(const std::vector<int>& t, const std::vector<int>& p) {
  EvalReport r;
  double sum = 0;
  for (int c = 0; c < 3; ++c) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (p[i] == c && t[i] == c) tp += 1;
      if (p[i] == c && t[i] != c) fp += 1;
      if (p[i] != c && t[i] == c) fn += 1;
    }
    auto& m = r.per_class[static_cast<std::size_t>(c)];
    m.precision = tp + fp > 0 ? tp / (tp + fp) : 0;
    m.recall = tp + fn > 0 ? tp / (tp + fn) : 0;
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0;
    m.support = static_cast<std::uint64_t>(tp + fn);
    sum += m.f1;
  }
  r.macro_f1 = sum / 3;
  return r;
}

TEST(Metrics, HandComputedExample) {
  ConfusionMatrix cm;
  cm.counts = {{{50, 10, 0}, {5, 35, 0}, {0, 0, 0}}};
  const auto r = metrics_from_confusion(cm);
  EXPECT_NEAR(r.per_class[0].precision, 0.9091, 5e-5);
  EXPECT_NEAR(r.per_class[0].recall, 0.8333, 5e-5);
  EXPECT_NEAR(r.per_class[0].f1, 0.8696, 5e-5);
  EXPECT_TRUE(r.per_class[2].absent);
  EXPECT_EQ(r.per_class[2].f1, 0.0);
  EXPECT_EQ(r.confusion.total(), 100u);
  EXPECT_EQ(r.confusion.support(1), 40u);
}

TEST(Metrics, PerfectAndErrors) {
  const std::vector<int> y = {0, 1, 2, 2};
  const auto r = metrics(y, y);
  for (const auto& m : r.per_class) EXPECT_EQ(m.f1, 1.0);
  EXPECT_EQ(r.macro_f1, 1.0);
  EXPECT_THROW(metrics(y, std::vector<int>{0, 1}), std::invalid_argument);
  EXPECT_THROW(metrics({}, {}), std::invalid_argument);
  EXPECT_THROW(metrics(std::vector<int>{3}, std::vector<int>{0}), std::invalid_argument);
}

TEST(Metrics, MatchesNaiveRecount) {
  Pcg32 rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.bounded(60);
    std::vector<int> t(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = static_cast<int>(rng.bounded(3));
      p[i] = static_cast<int>(rng.bounded(3));
    }
    const auto a = metrics(t, p), b = naive_metrics(t, p);
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_EQ(a.per_class[c].precision, b.per_class[c].precision);
      EXPECT_EQ(a.per_class[c].recall, b.per_class[c].recall);
      EXPECT_EQ(a.per_class[c].f1, b.per_class[c].f1);
      EXPECT_EQ(a.per_class[c].support, b.per_class[c].support);
      EXPECT_EQ(a.confusion.support(c), a.per_class[c].support);
      for (double v : {a.per_class[c].precision, a.per_class[c].recall, a.per_class[c].f1}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
      total += a.confusion.support(c);
    }
    EXPECT_EQ(total, n);
    EXPECT_EQ(a.confusion.total(), n);
    EXPECT_EQ(a.macro_f1, (a.per_class[0].f1 + a.per_class[1].f1 + a.per_class[2].f1) / 3);
  }
}

TEST(Metrics, TextAndJson) {
  const auto r = metrics(std::vector<int>{0, 1, 2}, std::vector<int>{0, 1, 1});
  const auto text = render_report_text(r);
  EXPECT_NE(text.find("macro"), std::string::npos) << text;
  EXPECT_EQ(r.to_json()["confusion"][2][1], 1);
}

TEST(TopTerms, Rules) {
  std::vector<LabeledDoc> docs = {
      {"1", "the alpha alpha beta", Label::kHate},
      {"2", "alpha and THE x", Label::kHate},
      {"3", "gamma RT", Label::kNeither},
  };
  const auto top = class_top_terms(Corpus(docs), 10);
  ASSERT_FALSE(top[0].empty());
  EXPECT_EQ(top[0][0], (std::pair<std::string, std::size_t>{"alpha", 3}));
  EXPECT_EQ(top[0].size(), 2u);
  EXPECT_TRUE(top[1].empty());
  for (const auto& cls : top) {
    for (const auto& [w, n] : cls) {
      EXPECT_NE(w, "the");
      EXPECT_NE(w, "x");
    }
  }
  EXPECT_EQ(class_top_terms(Corpus(docs), 1)[0].size(), 1u);
  EXPECT_TRUE(is_stopword("the"));
}

TEST(Synthetic, ShapeAndDeterminism) {
  const auto a = generate_synthetic_corpus({50, 0.2, 3});
  const auto b = generate_synthetic_corpus({50, 0.2, 3});
  EXPECT_EQ(a.size(), 150u);
  for (auto c : a.class_counts()) EXPECT_EQ(c, 50u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].text, b[i].text);
  EXPECT_NE(generate_synthetic_corpus({50, 0.2, 4})[0].text, a[0].text);
  EXPECT_THROW(generate_synthetic_corpus({50, 1.5, 3}), std::invalid_argument);
  EXPECT_THROW(generate_synthetic_corpus({1, 0.2, 3}), std::invalid_argument);
}

TEST(Synthetic, LexiconCoversGeneratorWords) {
  const auto lex = text::SentimentLexicon::load(boostlex::testing::data_path("lexicon.tsv"));
  for (const auto& [word, valence] : synthetic_valences()) {
    const auto v = lex.valence(word);
    ASSERT_TRUE(v.has_value()) << word;
    EXPECT_DOUBLE_EQ(*v, valence) << word;
  }
}

TEST(Synthetic, TaggedSentencesAreConsistent) {
  for (const auto& s : generate_tagged_sentences(100, 1)) {
    ASSERT_EQ(s.words.size(), s.tags.size());
    ASSERT_FALSE(s.words.empty());
  }
}

class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { resources_ = new Resources(boostlex::testing::synthetic_resources()); }
  static void TearDownTestSuite() { delete resources_; }
  static Resources* resources_;
};
Resources* PipelineTest::resources_ = nullptr;

TEST_F(PipelineTest, CrossValidationHasNoLeakageAndIsDeterministic) {
  const auto corpus = generate_synthetic_corpus({40, 0.2, 5});
  auto config = boostlex::testing::quick_config(5);
  config.params.rounds = 5;
  const auto a = cross_validate(corpus, *resources_, config, 5, 3);
  ASSERT_EQ(a.folds.size(), 5u);
  ASSERT_EQ(a.fold_vocabularies.size(), 5u);
  const auto folds = kfold_indices(corpus.size(), 5, 3);
  const auto& wc = config.featurizer.word_tfidf;
  for (std::size_t f = 0; f < 5; ++f) {
    std::set<std::string> train_terms;
    for (auto i : folds[f].train) {
      for (auto& t : text::ngrams(word_terms(text::tokenize(corpus[i].text)), wc.ngram_lo, wc.ngram_hi)) {
        train_terms.insert(t);
      }
    }
    for (const auto& term : a.fold_vocabularies[f]) EXPECT_TRUE(train_terms.count(term)) << "fold " << f << ": " << term;
  }
  const auto b = cross_validate(corpus, *resources_, config, 5, 3);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_NE(render_cv_text(a).find("hate"), std::string::npos);
}

TEST_F(PipelineTest, AblationSingleStage) {
  const auto corpus = generate_synthetic_corpus({40, 0.2, 6});
  const auto rows = ablation(corpus, *resources_, boostlex::testing::quick_config(5), {3}, 0.2, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].stage, 3);
  const auto text = render_ablation_text(rows);
  EXPECT_NE(text.find("Stage"), std::string::npos);
  EXPECT_NE(text.find("Neither"), std::string::npos);
  EXPECT_EQ(ablation_to_json(rows).size(), 1u);
}

TEST_F(PipelineTest, PipelineRoundTrip) {
  const auto corpus = generate_synthetic_corpus({30, 0.2, 8});
  const auto pipe = fit_pipeline(corpus, *resources_, boostlex::testing::quick_config(5));
  const auto dir = boostlex::testing::temp_dir();
  pipe.save(dir / "p.json");
  const auto back = Pipeline::load(dir / "p.json");
  const auto texts = texts_of(corpus);
  const auto a = pipe.predict_batch(texts), b = back.predict_batch(texts);
  for (std::size_t i = 0; i < texts.size(); ++i) EXPECT_EQ(a[i].probabilities, b[i].probabilities);
  auto j = pipe.to_json();
  j["registry_fingerprint"] = "ffffffffffffffff";
  EXPECT_THROW(Pipeline::from_json(j), DataError);
}

}  // namespace
}  // namespace boostlex::eval
