#ifndef BOOSTLEX_FEATURES_H_
#define BOOSTLEX_FEATURES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace boostlex {

// Sparse feature row. Entries are sorted by column; an absent column is
// "missing" for the tree learner, not zero.
class FeatureVector {
 public:
  using Entry = std::pair<std::uint32_t, double>;

  FeatureVector() = default;
  explicit FeatureVector(std::size_t dimension) : dimension_(dimension) {}
  // Entries need not be sorted; throws std::invalid_argument on an
  // out-of-range or repeated column or a non-finite value.
  FeatureVector(std::size_t dimension, std::vector<Entry> entries);
  // Every column present, including zeros.
  static FeatureVector dense(std::span<const double> values);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  std::optional<double> get(std::uint32_t column) const;
  double value_or_zero(std::uint32_t column) const { return get(column).value_or(0.0); }

  // Appends; columns must arrive in increasing order.
  void push_back(std::uint32_t column, double value);

  bool operator==(const FeatureVector&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<Entry> entries_;
};

enum class BlockKind { kDense, kSentiment, kPosCounts, kNer, kWordTfidf, kPosTfidf };

std::string_view block_name(BlockKind kind);

struct RegistryBlock {
  BlockKind kind;
  std::size_t offset = 0;
  std::size_t size = 0;
};

// Dense index -> human-readable feature name, grouped into ordered blocks.
class FeatureRegistry {
 public:
  FeatureRegistry() = default;

  // Appends a block; throws std::invalid_argument on a duplicate name.
  void add_block(BlockKind kind, std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<RegistryBlock>& blocks() const { return blocks_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  // FNV-1a 64 over the newline-joined names, as 16 hex digits.
  std::string fingerprint() const;

  nlohmann::json to_json() const;

 private:
  std::vector<std::string> names_;
  std::vector<RegistryBlock> blocks_;
};

}  // namespace boostlex

#endif  // BOOSTLEX_FEATURES_H_
