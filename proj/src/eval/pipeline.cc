#include "boostlex/eval/pipeline.h"

#include <fstream>
#include <sstream>

namespace boostlex::eval {

std::vector<std::string> texts_of(const Corpus& corpus) {
  std::vector<std::string> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus.docs()) out.push_back(d.text);
  return out;
}

std::vector<int> labels_of(const Corpus& corpus) {
  std::vector<int> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus.docs()) out.push_back(static_cast<int>(to_index(d.label)));
  return out;
}

gbt::Prediction Pipeline::predict(std::string_view text) const { return model.predict(featurizer.transform(text)); }

std::vector<gbt::Prediction> Pipeline::predict_batch(std::span<const std::string> texts) const {
  const auto xs = featurizer.transform_batch(texts);
  return model.predict_batch(xs);
}

nlohmann::json Pipeline::to_json() const {
  auto j = model.to_json();
  j["featurizer"] = featurizer.to_json();
  return j;
}

Pipeline Pipeline::from_json(const nlohmann::json& j) {
  auto model = gbt::TreeEnsemble::from_json(j);
  if (!j.contains("featurizer")) throw DataError("model file has no embedded featurizer");
  Featurizer featurizer = [&] {
    try {
      return Featurizer::from_json(j.at("featurizer"));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("malformed featurizer: ") + e.what());
    }
  }();
  model.check_fingerprint(featurizer.registry());
  if (featurizer.registry().size() != model.feature_dimension) {
    throw DataError("featurizer dimension does not match model");
  }
  return Pipeline{std::move(featurizer), std::move(model)};
}

void Pipeline::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file " + path.string());
  out << to_json().dump(1) << '\n';
  if (!out) throw DataError("failed writing model file " + path.string());
}

Pipeline Pipeline::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return from_json(j);
}

Pipeline fit_pipeline(const Corpus& train, const Resources& resources, const PipelineConfig& config,
                      gbt::TrainingLog* log) {
  const auto texts = texts_of(train);
  auto featurizer = Featurizer::fit(texts, resources.lexicon, resources.tagger, config.featurizer);
  const auto xs = featurizer.transform_batch(texts);
  const gbt::FeatureMatrix matrix(xs, featurizer.registry().size());
  auto params = config.params;
  if (config.balanced_weights) params.class_weights = gbt::balanced_class_weights(train.class_counts());
  auto model = gbt::train(matrix, labels_of(train), params, log);
  model.registry_fingerprint = featurizer.registry().fingerprint();
  return Pipeline{std::move(featurizer), std::move(model)};
}

EvalReport evaluate(const Pipeline& pipeline, const Corpus& corpus) {
  const auto preds = pipeline.predict_batch(texts_of(corpus));
  std::vector<int> y_pred;
  y_pred.reserve(preds.size());
  for (const auto& p : preds) y_pred.push_back(p.label);
  return metrics(labels_of(corpus), y_pred);
}

}  // namespace boostlex::eval
