#include "boostlex/gbt/ensemble.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "boostlex/gbt/grower.h"

namespace boostlex::gbt {

int argmax(const ClassVector& v) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < kNumClasses; ++k) {
    if (v[k] > v[best]) best = k;
  }
  return static_cast<int>(best);
}

ClassVector TreeEnsemble::margins(const SparseRow& row) const {
  ClassVector m;
  m.fill(base_score);
  for (const auto& round : rounds) {
    for (std::size_t k = 0; k < kNumClasses; ++k) m[k] += round[k].predict(row);
  }
  return m;
}

Prediction TreeEnsemble::predict(const FeatureVector& x) const {
  if (x.dimension() != feature_dimension) {
    throw std::invalid_argument("feature dimension " + std::to_string(x.dimension()) + " does not match model (" +
                                std::to_string(feature_dimension) + ")");
  }
  Prediction p;
  p.margins.fill(base_score);
  for (const auto& round : rounds) {
    for (std::size_t k = 0; k < kNumClasses; ++k) p.margins[k] += round[k].predict(x);
  }
  p.probabilities = softmax(p.margins);
  p.label = argmax(p.margins);
  return p;
}

std::vector<Prediction> TreeEnsemble::predict_batch(std::span<const FeatureVector> xs) const {
  for (const auto& x : xs) {
    if (x.dimension() != feature_dimension) throw std::invalid_argument("feature dimension does not match model");
  }
  std::vector<Prediction> out(xs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(xs.size()); ++i) {
    out[static_cast<std::size_t>(i)] = predict(xs[static_cast<std::size_t>(i)]);
  }
  return out;
}

void TreeEnsemble::check_fingerprint(const FeatureRegistry& registry) const {
  if (registry.fingerprint() != registry_fingerprint) {
    throw DataError("feature registry fingerprint " + registry.fingerprint() + " does not match model (" +
                    registry_fingerprint + ")");
  }
}

nlohmann::json TreeEnsemble::to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& round : rounds) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& t : round) r.push_back(t.to_json());
    trees.push_back(std::move(r));
  }
  return {{"format_version", kModelFormatVersion},
          {"class_names", kClassNames},
          {"feature_dimension", feature_dimension},
          {"registry_fingerprint", registry_fingerprint},
          {"base_score", base_score},
          {"params", params.to_json()},
          {"trees", std::move(trees)}};
}

TreeEnsemble TreeEnsemble::from_json(const nlohmann::json& j) {
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("unsupported model format_version " + std::to_string(version) + " (expected " +
                      std::to_string(kModelFormatVersion) + ")");
    }
    const auto names = j.at("class_names").get<std::vector<std::string>>();
    if (names.size() != kNumClasses || !std::equal(names.begin(), names.end(), kClassNames.begin())) {
      throw DataError("model class_names do not match hate/offensive/neither");
    }
    TreeEnsemble e;
    e.feature_dimension = j.at("feature_dimension").get<std::size_t>();
    e.registry_fingerprint = j.at("registry_fingerprint").get<std::string>();
    e.base_score = j.at("base_score").get<double>();
    e.params = TrainParams::from_json(j.at("params"));
    for (const auto& r : j.at("trees")) {
      if (!r.is_array() || r.size() != kNumClasses) throw DataError("each boosting round needs one tree per class");
      std::array<Tree, kNumClasses> round;
      for (std::size_t k = 0; k < kNumClasses; ++k) {
        round[k] = Tree::from_json(r[k]);
        round[k].validate(e.feature_dimension);
      }
      e.rounds.push_back(std::move(round));
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed model: ") + ex.what());
  }
}

void TreeEnsemble::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file " + path.string());
  out << to_json().dump(1) << '\n';
  if (!out) throw DataError("failed writing model file " + path.string());
}

TreeEnsemble TreeEnsemble::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& ex) {
    throw DataError(path.string() + ": parse error at byte " + std::to_string(ex.byte) + ": " + ex.what());
  }
  return from_json(j);
}

TreeEnsemble train(const FeatureMatrix& matrix, std::span<const int> labels, const TrainParams& params,
                   TrainingLog* log) {
  params.validate();
  const std::size_t n = matrix.num_rows();
  if (n == 0) throw std::invalid_argument("empty training set");
  if (labels.size() != n) throw std::invalid_argument("label count differs from row count");
  std::vector<double> weights(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (labels[r] < 0 || labels[r] >= static_cast<int>(kNumClasses)) throw std::invalid_argument("label out of range");
    weights[r] = params.class_weights[static_cast<std::size_t>(labels[r])];
  }

  TreeEnsemble model;
  model.feature_dimension = matrix.num_features();
  model.params = params;
  std::vector<double> margins(n * kNumClasses, model.base_score);
  if (log) log->loss.assign(1, weighted_softmax_loss(margins, labels, weights));
  if (params.rounds == 0) return model;

  const ColumnIndex columns(matrix);
  std::vector<double> gk(n), hk(n);
  for (int round = 0; round < params.rounds; ++round) {
    const auto gh = grad_hess_multiclass(margins, labels, weights);
    std::array<Tree, kNumClasses> trees;
    for (std::size_t k = 0; k < kNumClasses; ++k) {
      for (std::size_t r = 0; r < n; ++r) {
        gk[r] = gh.g[r * kNumClasses + k];
        hk[r] = gh.h[r * kNumClasses + k];
      }
      trees[k] = grow_tree(matrix, columns, gk, hk, params);
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(n); ++r) {
      const auto row = matrix.row(static_cast<std::size_t>(r));
      for (std::size_t k = 0; k < kNumClasses; ++k) {
        margins[static_cast<std::size_t>(r) * kNumClasses + k] += trees[k].predict(row);
      }
    }
    model.rounds.push_back(std::move(trees));
    if (log) log->loss.push_back(weighted_softmax_loss(margins, labels, weights));
  }
  return model;
}

}  // namespace boostlex::gbt
