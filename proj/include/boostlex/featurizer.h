#ifndef BOOSTLEX_FEATURIZER_H_
#define BOOSTLEX_FEATURIZER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "boostlex/features.h"
#include "boostlex/text/ner.h"
#include "boostlex/text/sentiment.h"
#include "boostlex/text/surface.h"
#include "boostlex/text/tagger.h"
#include "boostlex/text/tfidf.h"
#include "boostlex/text/tokenizer.h"

namespace boostlex {

// Cumulative feature sets:
//   1 sentiment
//   2 + POS tag counts, NER counts
//   3 + hashtags, mentions, urls, is-retweet
//   4 + exclamations, questions, periods, all-caps, emojis
//   5 + surface/readability stats, word TF-IDF, POS n-gram TF-IDF
inline constexpr int kMinStage = 1;
inline constexpr int kMaxStage = 5;

std::string_view stage_description(int stage);

struct FeaturizerConfig {
  int stage = kMaxStage;
  text::TfidfConfig word_tfidf{1, 3, 5000, 2};
  text::TfidfConfig pos_tfidf{1, 3, 2000, 2};
};

// Everything computed once from a document's text.
struct DocAnalysis {
  std::vector<text::Token> tokens;
  std::vector<std::string> tags;
  std::vector<std::string> word_terms;
  text::SurfaceStats surface;
  text::SentimentScores sentiment;
  text::NerCounts ner;
};

// The term stream word TF-IDF sees: lowercased words, hashtags and emoji;
// mentions, urls and numbers collapse to @user, <url>, <num>.
std::vector<std::string> word_terms(std::span<const text::Token> tokens);

DocAnalysis analyze(std::string_view text, const text::SentimentLexicon& lexicon, const text::TaggerModel& tagger);

// Fitted text-to-feature pipeline. Immutable after fit(); transform() is
// safe to call concurrently.
class Featurizer {
 public:
  // Fits the TF-IDF blocks (stage 5 only) on `texts`. Throws
  // std::invalid_argument for a stage outside 1..5.
  static Featurizer fit(std::span<const std::string> texts, text::SentimentLexicon lexicon,
                        text::TaggerModel tagger, const FeaturizerConfig& config);

  const FeatureRegistry& registry() const { return registry_; }
  const FeaturizerConfig& config() const { return config_; }
  const text::SentimentLexicon& lexicon() const { return lexicon_; }
  const text::TaggerModel& tagger() const { return tagger_; }
  const std::optional<text::TfidfModel>& word_tfidf() const { return word_tfidf_; }
  const std::optional<text::TfidfModel>& pos_tfidf() const { return pos_tfidf_; }

  // Concatenates the enabled blocks in registry order; zero values are
  // left out of the sparse vector. Throws std::logic_error if a column
  // lands outside the registry.
  FeatureVector assemble(const DocAnalysis& doc) const;
  FeatureVector transform(std::string_view text) const;

  // Row-parallel over documents (OpenMP); order of the result matches input.
  std::vector<FeatureVector> transform_batch(std::span<const std::string> texts) const;
  // Single-threaded reference for transform_batch.
  std::vector<FeatureVector> transform_batch_serial(std::span<const std::string> texts) const;

  nlohmann::json to_json() const;
  static Featurizer from_json(const nlohmann::json& j);

 private:
  Featurizer(text::SentimentLexicon lexicon, text::TaggerModel tagger, FeaturizerConfig config);
  void build_registry();

  FeaturizerConfig config_;
  text::SentimentLexicon lexicon_;
  text::TaggerModel tagger_;
  std::optional<text::TfidfModel> word_tfidf_;
  std::optional<text::TfidfModel> pos_tfidf_;
  FeatureRegistry registry_;
  std::vector<std::string> tag_inventory_;
  std::vector<int> dense_fields_;  // indices into the dense field table
};

}  // namespace boostlex

#endif  // BOOSTLEX_FEATURIZER_H_
