#include "boostlex/cli/config.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "boostlex/common.h"

namespace boostlex::cli {
namespace {

using nlohmann::json;

struct Field {
  std::string key;
  std::function<void(RunConfig&, const json&)> set;
  std::function<json(const RunConfig&)> get;
  std::function<json(const std::string&)> parse_flag;
};

[[noreturn]] void type_error(const std::string& key, std::string_view expected) {
  throw UsageError("config key '" + key + "': expected " + std::string(expected));
}

template <typename T>
T convert(const std::string& key, const json& v);

template <>
std::string convert(const std::string& key, const json& v) {
  if (!v.is_string()) type_error(key, "a string");
  return v.get<std::string>();
}
template <>
bool convert(const std::string& key, const json& v) {
  if (!v.is_boolean()) type_error(key, "true or false");
  return v.get<bool>();
}
template <>
int convert(const std::string& key, const json& v) {
  if (!v.is_number_integer()) type_error(key, "an integer");
  const auto x = v.get<std::int64_t>();
  if (x < INT32_MIN || x > INT32_MAX) type_error(key, "an integer in 32-bit range");
  return static_cast<int>(x);
}
template <>
std::uint64_t convert(const std::string& key, const json& v) {
  if (!v.is_number_unsigned()) type_error(key, "a non-negative integer");
  return v.get<std::uint64_t>();
}
template <>
double convert(const std::string& key, const json& v) {
  if (!v.is_number()) type_error(key, "a number");
  return v.get<double>();
}
template <>
std::vector<int> convert(const std::string& key, const json& v) {
  if (!v.is_array()) type_error(key, "a list of integers");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(convert<int>(key, x));
  return out;
}
template <>
std::vector<double> convert(const std::string& key, const json& v) {
  if (!v.is_array()) type_error(key, "a list of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(convert<double>(key, x));
  return out;
}
template <>
std::optional<gbt::ClassVector> convert(const std::string& key, const json& v) {
  if (v.is_string() && v.get<std::string>() == "balanced") return std::nullopt;
  if (!v.is_array() || v.size() != kNumClasses) type_error(key, "\"balanced\" or a list of 3 numbers");
  gbt::ClassVector w;
  for (std::size_t c = 0; c < kNumClasses; ++c) w[c] = convert<double>(key, v[c]);
  return w;
}

json to_json_value(const std::optional<gbt::ClassVector>& w) { return w ? json(*w) : json("balanced"); }
template <typename T>
json to_json_value(const T& v) {
  return json(v);
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Flag text to a JSON value of the field's type, then through convert().
json number_from_text(const std::string& key, const std::string& s) {
  json v = json::parse(s, nullptr, false);
  if (v.is_discarded() || !v.is_number()) type_error(key, "a number, got '" + s + "'");
  return v;
}

template <typename T>
json flag_value(const std::string& key, const std::string& raw) {
  if constexpr (std::is_same_v<T, std::string>) {
    return raw;
  } else if constexpr (std::is_same_v<T, bool>) {
    if (raw == "true" || raw == "1" || raw.empty()) return true;
    if (raw == "false" || raw == "0") return false;
    type_error(key, "true or false");
  } else if constexpr (std::is_same_v<T, std::optional<gbt::ClassVector>>) {
    if (raw == "balanced") return raw;
    json arr = json::array();
    for (const auto& item : split_list(raw)) arr.push_back(number_from_text(key, item));
    return arr;
  } else if constexpr (std::is_same_v<T, std::vector<int>> || std::is_same_v<T, std::vector<double>>) {
    json arr = json::array();
    for (const auto& item : split_list(raw)) arr.push_back(number_from_text(key, item));
    return arr;
  } else {
    return number_from_text(key, raw);
  }
}

template <typename T>
Field field(std::string key, T RunConfig::*member) {
  return Field{key, [key, member](RunConfig& c, const json& v) { c.*member = convert<T>(key, v); },
               [member](const RunConfig& c) { return to_json_value(c.*member); },
               [key](const std::string& raw) { return flag_value<T>(key, raw); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      field("corpus", &RunConfig::corpus),
      field("input", &RunConfig::input),
      field("format", &RunConfig::format),
      field("lexicon", &RunConfig::lexicon),
      field("tagger_corpus", &RunConfig::tagger_corpus),
      field("tagger_model", &RunConfig::tagger_model),
      field("tagger_out", &RunConfig::tagger_out),
      field("model", &RunConfig::model),
      field("model_out", &RunConfig::model_out),
      field("output", &RunConfig::output),
      field("seed", &RunConfig::seed),
      field("test_fraction", &RunConfig::test_fraction),
      field("downsample", &RunConfig::downsample),
      field("json", &RunConfig::json),
      field("rounds", &RunConfig::rounds),
      field("eta", &RunConfig::eta),
      field("max_depth", &RunConfig::max_depth),
      field("min_child_weight", &RunConfig::min_child_weight),
      field("lambda", &RunConfig::lambda),
      field("gamma", &RunConfig::gamma),
      field("class_weights", &RunConfig::class_weights),
      field("stage", &RunConfig::stage),
      field("ngram_lo", &RunConfig::ngram_lo),
      field("ngram_hi", &RunConfig::ngram_hi),
      field("max_features", &RunConfig::max_features),
      field("min_df", &RunConfig::min_df),
      field("pos_ngram_lo", &RunConfig::pos_ngram_lo),
      field("pos_ngram_hi", &RunConfig::pos_ngram_hi),
      field("pos_max_features", &RunConfig::pos_max_features),
      field("pos_min_df", &RunConfig::pos_min_df),
      field("tagger_epochs", &RunConfig::tagger_epochs),
      field("k", &RunConfig::k),
      field("top", &RunConfig::top),
      field("explain_format", &RunConfig::explain_format),
      field("explain_class", &RunConfig::explain_class),
      field("stages", &RunConfig::stages),
      field("grid_eta", &RunConfig::grid_eta),
      field("grid_max_depth", &RunConfig::grid_max_depth),
      field("grid_rounds", &RunConfig::grid_rounds),
  };
  return f;
}

const Field& find_field(const std::string& key) {
  for (const auto& f : fields()) {
    if (f.key == key) return f;
  }
  throw UsageError("unknown config key '" + key + "'");
}

}  // namespace

gbt::TrainParams RunConfig::train_params() const {
  gbt::TrainParams p;
  p.rounds = rounds;
  p.eta = eta;
  p.max_depth = max_depth;
  p.min_child_weight = min_child_weight;
  p.lambda = lambda;
  p.gamma = gamma;
  if (class_weights) p.class_weights = *class_weights;
  p.seed = seed;
  return p;
}

FeaturizerConfig RunConfig::featurizer_config() const {
  FeaturizerConfig c;
  c.stage = stage;
  c.word_tfidf = {ngram_lo, ngram_hi, max_features, min_df};
  c.pos_tfidf = {pos_ngram_lo, pos_ngram_hi, pos_max_features, pos_min_df};
  return c;
}

nlohmann::json RunConfig::to_json() const {
  auto j = nlohmann::json::object();
  for (const auto& f : fields()) j[f.key] = f.get(*this);
  return j;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

void apply_config_json(RunConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) find_field(key).set(config, value);
}

void apply_flag(RunConfig& config, const std::string& key, const std::string& raw) {
  const auto& f = find_field(key);
  f.set(config, f.parse_flag(raw));
}

void validate_ranges(const RunConfig& c) {
  try {
    c.train_params().validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
  };
  require(c.stage >= kMinStage && c.stage <= kMaxStage, "stage must lie in 1..5");
  for (int s : c.stages) require(s >= kMinStage && s <= kMaxStage, "stages must lie in 1..5");
  require(c.ngram_lo >= 1 && c.ngram_hi >= c.ngram_lo, "need 1 <= ngram_lo <= ngram_hi");
  require(c.pos_ngram_lo >= 1 && c.pos_ngram_hi >= c.pos_ngram_lo, "need 1 <= pos_ngram_lo <= pos_ngram_hi");
  require(c.max_features >= 0 && c.pos_max_features >= 0, "max_features must be >= 0");
  require(c.min_df >= 1 && c.pos_min_df >= 1, "min_df must be >= 1");
  require(c.tagger_epochs >= 1, "tagger_epochs must be >= 1");
  require(c.k >= 2, "k must be >= 2");
  require(c.top >= 1, "top must be >= 1");
  require(c.test_fraction >= 0.0 && c.test_fraction < 1.0, "test_fraction must lie in [0, 1)");
  require(c.explain_class >= -1 && c.explain_class < static_cast<int>(kNumClasses), "explain_class must be -1, 0, 1 or 2");
  require(c.explain_format == "text" || c.explain_format == "html", "explain_format must be text or html");
  require(c.format.empty() || c.format == "csv" || c.format == "tsv", "format must be csv or tsv");
  for (double e : c.grid_eta) require(e > 0 && e <= 1, "grid_eta values must lie in (0, 1]");
  for (int d : c.grid_max_depth) require(d >= 0, "grid_max_depth values must be >= 0");
  for (int r : c.grid_rounds) require(r >= 0, "grid_rounds values must be >= 0");
}

nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw UsageError("config file " + path + " is not valid JSON");
  if (!j.is_object()) throw UsageError("config file " + path + " must hold a JSON object");
  return j;
}

}  // namespace boostlex::cli
