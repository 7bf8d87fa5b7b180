#ifndef BOOSTLEX_EVAL_PIPELINE_H_
#define BOOSTLEX_EVAL_PIPELINE_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "boostlex/corpus.h"
#include "boostlex/eval/metrics.h"
#include "boostlex/featurizer.h"
#include "boostlex/gbt/ensemble.h"

namespace boostlex::eval {

// Pretrained text resources shared by every fit.
struct Resources {
  text::SentimentLexicon lexicon;
  text::TaggerModel tagger;
};

struct PipelineConfig {
  FeaturizerConfig featurizer;
  gbt::TrainParams params;
  // Replace params.class_weights with balanced weights from the training
  // split's class counts.
  bool balanced_weights = true;
};

struct Pipeline {
  Featurizer featurizer;
  gbt::TreeEnsemble model;

  gbt::Prediction predict(std::string_view text) const;
  std::vector<gbt::Prediction> predict_batch(std::span<const std::string> texts) const;

  // Model JSON with the featurizer embedded under "featurizer".
  nlohmann::json to_json() const;
  static Pipeline from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  // Throws DataError on a corrupt file or a registry fingerprint mismatch.
  static Pipeline load(const std::filesystem::path& path);
};

// Fits the featurizer on the training texts only, then the ensemble.
Pipeline fit_pipeline(const Corpus& train, const Resources& resources, const PipelineConfig& config,
                      gbt::TrainingLog* log = nullptr);

EvalReport evaluate(const Pipeline& pipeline, const Corpus& corpus);

std::vector<std::string> texts_of(const Corpus& corpus);
std::vector<int> labels_of(const Corpus& corpus);

}  // namespace boostlex::eval

#endif  // BOOSTLEX_EVAL_PIPELINE_H_
