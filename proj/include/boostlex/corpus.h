#ifndef BOOSTLEX_CORPUS_H_
#define BOOSTLEX_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boostlex/common.h"
#include "boostlex/csv.h"

namespace boostlex {

struct LabeledDoc {
  std::string id;
  std::string text;
  Label label = Label::kNeither;
};

// Immutable labeled collection. Class counts are always recomputed from the
// documents; ids must be unique.
class Corpus {
 public:
  Corpus() = default;
  // Throws DataError on an empty or duplicate id.
  explicit Corpus(std::vector<LabeledDoc> docs);

  const std::vector<LabeledDoc>& docs() const { return docs_; }
  const ClassCounts& class_counts() const { return counts_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const LabeledDoc& operator[](std::size_t i) const { return docs_[i]; }

  // Documents at the given positions, in the order given.
  Corpus subset(const std::vector<std::size_t>& indices) const;

 private:
  std::vector<LabeledDoc> docs_;
  ClassCounts counts_{};
};

// A document whose label column may be absent (prediction inputs).
struct InputDoc {
  std::string id;
  std::string text;
  std::optional<Label> label;
};

// Header must name exactly the columns id, text, label (any order).
// Errors (DataError): missing file, missing or unknown columns, wrong field
// count, unknown label (with line number and value), duplicate id.
Corpus load_corpus(const std::filesystem::path& path, TableFormat format);

// Same schema, but the label column is optional and ignored when present.
std::vector<InputDoc> load_inputs(const std::filesystem::path& path, TableFormat format);

void write_corpus(const Corpus& corpus, const std::filesystem::path& path, TableFormat format);

struct TrainTestSplit {
  Corpus train;
  Corpus test;
};

// Per class: test count = round-half-up(fraction * class count), clamped to
// [1, count - 1]; if the total drifts from round(fraction * N) the largest
// class absorbs the difference. Both outputs keep the input order.
// Throws std::invalid_argument for a fraction outside (0, 1) or a class
// with fewer than two members.
TrainTestSplit stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed);

// Samples every class without replacement down to the smallest class count.
// Output keeps the input order. Throws std::invalid_argument on an empty
// corpus.
Corpus downsample_to_minority(const Corpus& corpus, std::uint64_t seed);

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> valid;
};

// k folds over a seeded permutation of 0..n-1; validation sizes differ by at
// most one. Both index lists of each fold are sorted ascending.
// Throws std::invalid_argument unless 2 <= k <= n.
std::vector<Fold> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace boostlex

#endif  // BOOSTLEX_CORPUS_H_
