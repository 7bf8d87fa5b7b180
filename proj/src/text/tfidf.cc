#include "boostlex/text/tfidf.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "boostlex/common.h"

namespace boostlex::text {

std::vector<std::string> ngrams(std::span<const std::string> terms, int lo, int hi) {
  std::vector<std::string> out;
  for (int n = lo; n <= hi; ++n) {
    const auto len = static_cast<std::size_t>(n);
    if (terms.size() < len) break;
    for (std::size_t i = 0; i + len <= terms.size(); ++i) {
      std::string gram = terms[i];
      for (std::size_t k = 1; k < len; ++k) {
        gram.push_back(' ');
        gram += terms[i + k];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

std::int64_t TfidfModel::column(const std::string& ngram) const {
  const auto it = vocabulary_.find(ngram);
  return it == vocabulary_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

nlohmann::json TfidfModel::to_json() const {
  return {{"ngram_range", {config_.ngram_lo, config_.ngram_hi}},
          {"max_features", config_.max_features},
          {"min_df", config_.min_df},
          {"terms", terms_},
          {"idf", idf_}};
}

TfidfModel TfidfModel::from_json(const nlohmann::json& j) {
  TfidfModel m;
  const auto range = j.at("ngram_range").get<std::vector<int>>();
  if (range.size() != 2) throw DataError("tfidf ngram_range must have two entries");
  m.config_ = TfidfConfig{range[0], range[1], j.at("max_features").get<int>(), j.at("min_df").get<int>()};
  m.terms_ = j.at("terms").get<std::vector<std::string>>();
  m.idf_ = j.at("idf").get<std::vector<double>>();
  if (m.terms_.size() != m.idf_.size()) throw DataError("tfidf terms and idf differ in length");
  for (std::size_t c = 0; c < m.terms_.size(); ++c) {
    if (!(m.idf_[c] > 0)) throw DataError("tfidf idf must be positive");
    m.vocabulary_.emplace(m.terms_[c], c);
  }
  return m;
}

TfidfModel fit_tfidf(std::span<const TermSequence> docs, const TfidfConfig& config) {
  if (docs.empty()) throw std::invalid_argument("fit_tfidf: empty corpus");
  if (config.max_features < 1) throw std::invalid_argument("fit_tfidf: max_features must be >= 1");
  if (config.ngram_lo < 1 || config.ngram_hi < config.ngram_lo) {
    throw std::invalid_argument("fit_tfidf: invalid n-gram range");
  }

  std::unordered_map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    auto grams = ngrams(doc, config.ngram_lo, config.ngram_hi);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (auto& g : grams) ++df[std::move(g)];
  }

  std::vector<std::pair<std::string, std::size_t>> candidates;
  for (auto& [gram, count] : df) {
    if (count >= static_cast<std::size_t>(std::max(config.min_df, 1))) candidates.emplace_back(gram, count);
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (candidates.size() > static_cast<std::size_t>(config.max_features)) {
    candidates.resize(static_cast<std::size_t>(config.max_features));
  }
  std::sort(candidates.begin(), candidates.end());

  TfidfModel model;
  model.config_ = config;
  const double n = static_cast<double>(docs.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    model.vocabulary_.emplace(candidates[c].first, c);
    model.terms_.push_back(candidates[c].first);
    model.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(candidates[c].second))) + 1.0);
  }
  return model;
}

std::vector<std::pair<std::size_t, double>> tfidf_transform(std::span<const std::string> terms,
                                                           const TfidfModel& model) {
  std::map<std::size_t, double> counts;
  for (const auto& g : ngrams(terms, model.config().ngram_lo, model.config().ngram_hi)) {
    if (const auto c = model.column(g); c >= 0) counts[static_cast<std::size_t>(c)] += 1.0;
  }
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(counts.size());
  double norm2 = 0;
  for (const auto& [c, count] : counts) {
    const double v = count * model.idf(c);
    out.emplace_back(c, v);
    norm2 += v * v;
  }
  if (norm2 > 0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& [c, v] : out) v *= inv;
  }
  return out;
}

}  // namespace boostlex::text
