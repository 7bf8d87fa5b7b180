#ifndef BOOSTLEX_TEXT_TFIDF_H_
#define BOOSTLEX_TEXT_TFIDF_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace boostlex::text {

struct TfidfConfig {
  int ngram_lo = 1;
  int ngram_hi = 3;
  int max_features = 5000;
  int min_df = 2;
};

using TermSequence = std::vector<std::string>;

// Space-joined n-grams of orders lo..hi.
std::vector<std::string> ngrams(std::span<const std::string> terms, int lo, int hi);

class TfidfModel {
 public:
  TfidfModel() = default;

  std::size_t size() const { return idf_.size(); }
  const TfidfConfig& config() const { return config_; }
  // Column index of an n-gram, or -1.
  std::int64_t column(const std::string& ngram) const;
  double idf(std::size_t column) const { return idf_[column]; }
  // N-gram of each column, in column order.
  const std::vector<std::string>& terms() const { return terms_; }

  nlohmann::json to_json() const;
  static TfidfModel from_json(const nlohmann::json& j);

 private:
  friend TfidfModel fit_tfidf(std::span<const TermSequence>, const TfidfConfig&);

  TfidfConfig config_;
  std::map<std::string, std::size_t> vocabulary_;
  std::vector<std::string> terms_;
  std::vector<double> idf_;
};

// Keeps the max_features n-grams with the highest document frequency (ties
// lexicographic) among those with df >= min_df; columns are numbered in
// lexicographic order. idf = ln((1 + N) / (1 + df)) + 1. Throws
// std::invalid_argument on an empty corpus, max_features < 1 or a bad
// n-gram range.
TfidfModel fit_tfidf(std::span<const TermSequence> docs, const TfidfConfig& config);

// Raw count times idf, L2-normalized; out-of-vocabulary n-grams dropped.
// Entries are sorted by column.
std::vector<std::pair<std::size_t, double>> tfidf_transform(std::span<const std::string> terms,
                                                           const TfidfModel& model);

}  // namespace boostlex::text

#endif  // BOOSTLEX_TEXT_TFIDF_H_
