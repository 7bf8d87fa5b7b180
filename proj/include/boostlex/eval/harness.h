#ifndef BOOSTLEX_EVAL_HARNESS_H_
#define BOOSTLEX_EVAL_HARNESS_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "boostlex/eval/pipeline.h"

namespace boostlex::eval {

struct CvSummary {
  std::vector<EvalReport> folds;
  std::array<double, kNumClasses> mean_f1{};
  std::array<double, kNumClasses> stdev_f1{};  // sample stdev over folds
  double mean_macro_f1 = 0;
  double stdev_macro_f1 = 0;
  // Word TF-IDF vocabulary fitted on each fold's training part (empty below
  // stage 5).
  std::vector<std::vector<std::string>> fold_vocabularies;

  nlohmann::json to_json() const;
};

// Refits featurizer and model on every training fold.
CvSummary cross_validate(const Corpus& corpus, const Resources& resources, const PipelineConfig& config,
                         std::size_t k, std::uint64_t seed);

std::string render_cv_text(const CvSummary& summary);

struct GridPoint {
  double eta;
  int max_depth;
  int rounds;
  CvSummary summary;
};

// Cross-validates every (eta, max_depth, rounds) combination in order; empty
// lists fall back to the config's value.
std::vector<GridPoint> grid_search(const Corpus& corpus, const Resources& resources, const PipelineConfig& config,
                                   const std::vector<double>& etas, const std::vector<int>& depths,
                                   const std::vector<int>& rounds, std::size_t k, std::uint64_t seed);

std::string render_grid_text(const std::vector<GridPoint>& grid);

struct AblationRow {
  int stage;
  std::string features;
  std::size_t dimension;
  EvalReport report;
};

// One stratified split shared by every stage.
std::vector<AblationRow> ablation(const Corpus& corpus, const Resources& resources, const PipelineConfig& config,
                                  const std::vector<int>& stages, double test_fraction, std::uint64_t seed);

// Columns: Stage, Features, Neither, Offensive, Hate (per-class F1).
std::string render_ablation_text(const std::vector<AblationRow>& rows);
nlohmann::json ablation_to_json(const std::vector<AblationRow>& rows);

bool is_stopword(std::string_view lowercase_word);

// Top-n lowercased word tokens per class by frequency (ties lexicographic),
// stopwords and single characters excluded. Indexed by class.
std::array<std::vector<std::pair<std::string, std::size_t>>, kNumClasses> class_top_terms(const Corpus& corpus,
                                                                                          std::size_t n);

std::string render_top_terms_text(
    const std::array<std::vector<std::pair<std::string, std::size_t>>, kNumClasses>& terms);

}  // namespace boostlex::eval

#endif  // BOOSTLEX_EVAL_HARNESS_H_
