#ifndef BOOSTLEX_GBT_ENSEMBLE_H_
#define BOOSTLEX_GBT_ENSEMBLE_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boostlex/common.h"
#include "boostlex/features.h"
#include "boostlex/gbt/matrix.h"
#include "boostlex/gbt/objective.h"
#include "boostlex/gbt/tree.h"

namespace boostlex::gbt {

inline constexpr int kModelFormatVersion = 1;

struct Prediction {
  ClassVector margins{};
  ClassVector probabilities{};
  int label = 0;
};

// Per-round, per-class trees. Immutable after training; safe to share
// across threads for prediction.
struct TreeEnsemble {
  std::size_t feature_dimension = 0;
  std::string registry_fingerprint;
  double base_score = 0.0;
  TrainParams params;
  std::vector<std::array<Tree, kNumClasses>> rounds;

  std::size_t num_trees() const { return rounds.size() * kNumClasses; }

  // Throws std::invalid_argument when x.dimension() != feature_dimension.
  Prediction predict(const FeatureVector& x) const;
  std::vector<Prediction> predict_batch(std::span<const FeatureVector> xs) const;
  // Margins only, for rows of a training matrix.
  ClassVector margins(const SparseRow& row) const;

  // Throws DataError when the fingerprint differs from the one the model
  // was trained against.
  void check_fingerprint(const FeatureRegistry& registry) const;

  nlohmann::json to_json() const;
  // Throws DataError on a version mismatch or malformed structure.
  static TreeEnsemble from_json(const nlohmann::json& j);

  void save(const std::filesystem::path& path) const;
  // Throws DataError for unreadable, truncated or corrupt files; parse
  // errors name the byte offset.
  static TreeEnsemble load(const std::filesystem::path& path);
};

// Argmax with ties going to the lowest class index.
int argmax(const ClassVector& v);

struct TrainingLog {
  // Weighted softmax loss on the training rows after each round; entry 0 is
  // the loss at the base score.
  std::vector<double> loss;
};

// Per-row weight is params.class_weights[label]. Throws std::invalid_argument
// on an empty matrix, misaligned labels, a label outside [0, 3), or invalid
// params.
TreeEnsemble train(const FeatureMatrix& matrix, std::span<const int> labels, const TrainParams& params,
                   TrainingLog* log = nullptr);

}  // namespace boostlex::gbt

#endif  // BOOSTLEX_GBT_ENSEMBLE_H_
