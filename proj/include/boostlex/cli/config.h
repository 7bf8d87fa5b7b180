#ifndef BOOSTLEX_CLI_CONFIG_H_
#define BOOSTLEX_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "boostlex/featurizer.h"
#include "boostlex/gbt/tree.h"

namespace boostlex::cli {

// Everything a command may read. JSON keys and flag names match (flags use
// dashes: max_depth <-> --max-depth).
struct RunConfig {
  std::string corpus;
  std::string input;
  std::string format;  // csv, tsv, or empty to guess from the extension
  std::string lexicon;
  std::string tagger_corpus;
  std::string tagger_model;
  std::string tagger_out;
  std::string model;
  std::string model_out;
  std::string output;

  std::uint64_t seed = 1;
  double test_fraction = 0.2;
  bool downsample = false;
  bool json = false;

  int rounds = 200;
  double eta = 0.1;
  int max_depth = 6;
  double min_child_weight = 1.0;
  double lambda = 1.0;
  double gamma = 0.0;
  std::optional<gbt::ClassVector> class_weights;  // empty = balanced

  int stage = kMaxStage;
  int ngram_lo = 1;
  int ngram_hi = 3;
  int max_features = 5000;
  int min_df = 2;
  int pos_ngram_lo = 1;
  int pos_ngram_hi = 3;
  int pos_max_features = 2000;
  int pos_min_df = 2;
  int tagger_epochs = 5;

  int k = 5;
  int top = 20;
  std::string explain_format = "text";
  int explain_class = -1;  // -1 = predicted class
  std::vector<int> stages{1, 2, 3, 4, 5};
  std::vector<double> grid_eta;
  std::vector<int> grid_max_depth;
  std::vector<int> grid_rounds;

  gbt::TrainParams train_params() const;
  FeaturizerConfig featurizer_config() const;
  nlohmann::json to_json() const;
};

// Every key accepted in a config file, in echo order.
const std::vector<std::string>& config_keys();

// Applies a JSON object onto `config`. Throws UsageError naming the key on
// an unknown key or a type mismatch.
void apply_config_json(RunConfig& config, const nlohmann::json& j);

// Parses a raw flag value for `key` (lists are comma-separated) and applies
// it. Throws UsageError on a malformed value.
void apply_flag(RunConfig& config, const std::string& key, const std::string& raw);

// Range checks on numeric fields (train params, stage, k, n-grams).
// Throws UsageError.
void validate_ranges(const RunConfig& config);

// Reads a JSON config file; throws UsageError when it is missing or not a
// JSON object.
nlohmann::json read_config_file(const std::string& path);

}  // namespace boostlex::cli

#endif  // BOOSTLEX_CLI_CONFIG_H_
