#include "boostlex/features.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace boostlex {

FeatureVector::FeatureVector(std::size_t dimension, std::vector<Entry> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].first >= dimension_) throw std::invalid_argument("feature column out of range");
    if (!std::isfinite(entries_[i].second)) throw std::invalid_argument("non-finite feature value");
    if (i > 0 && entries_[i].first == entries_[i - 1].first) throw std::invalid_argument("repeated feature column");
  }
}

FeatureVector FeatureVector::dense(std::span<const double> values) {
  FeatureVector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.push_back(static_cast<std::uint32_t>(i), values[i]);
  return v;
}

std::optional<double> FeatureVector::get(std::uint32_t column) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), column,
                                   [](const Entry& e, std::uint32_t c) { return e.first < c; });
  if (it != entries_.end() && it->first == column) return it->second;
  return std::nullopt;
}

void FeatureVector::push_back(std::uint32_t column, double value) {
  if (column >= dimension_) throw std::invalid_argument("feature column out of range");
  if (!entries_.empty() && entries_.back().first >= column) throw std::invalid_argument("columns must increase");
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite feature value");
  entries_.emplace_back(column, value);
}

std::string_view block_name(BlockKind kind) {
  switch (kind) {
    case BlockKind::kDense: return "dense";
    case BlockKind::kSentiment: return "sentiment";
    case BlockKind::kPosCounts: return "pos-counts";
    case BlockKind::kNer: return "ner";
    case BlockKind::kWordTfidf: return "word-tfidf";
    case BlockKind::kPosTfidf: return "pos-tfidf";
  }
  return "dense";
}

void FeatureRegistry::add_block(BlockKind kind, std::vector<std::string> names) {
  std::unordered_set<std::string> seen(names_.begin(), names_.end());
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate feature name '" + n + "'");
  }
  blocks_.push_back(RegistryBlock{kind, names_.size(), names.size()});
  names_.insert(names_.end(), std::make_move_iterator(names.begin()), std::make_move_iterator(names.end()));
}

std::optional<std::size_t> FeatureRegistry::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::string FeatureRegistry::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i > 0) mix('\n');
    for (char c : names_[i]) mix(static_cast<unsigned char>(c));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json FeatureRegistry::to_json() const {
  auto blocks = nlohmann::json::array();
  for (const auto& b : blocks_) {
    blocks.push_back({{"kind", block_name(b.kind)}, {"offset", b.offset}, {"size", b.size}});
  }
  return {{"fingerprint", fingerprint()}, {"dimension", names_.size()}, {"names", names_}, {"blocks", blocks}};
}

}  // namespace boostlex
