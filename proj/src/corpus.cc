#include "boostlex/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "boostlex/rng.h"

namespace boostlex {

namespace {

std::string trim_lower(std::string_view text) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct Columns {
  std::size_t id = 0;
  std::size_t text = 0;
  std::optional<std::size_t> label;
};

Columns resolve_columns(const TableRecord& header, bool require_label) {
  std::optional<std::size_t> id, text, label;
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    const auto name = trim_lower(header.fields[i]);
    std::optional<std::size_t>* slot = nullptr;
    if (name == "id") slot = &id;
    else if (name == "text") slot = &text;
    else if (name == "label") slot = &label;
    else throw DataError("unknown column '" + header.fields[i] + "' in header");
    if (slot->has_value()) throw DataError("duplicate column '" + name + "' in header");
    *slot = i;
  }
  if (!id) throw DataError("missing column 'id' in header");
  if (!text) throw DataError("missing column 'text' in header");
  if (require_label && !label) throw DataError("missing column 'label' in header");
  return Columns{*id, *text, label};
}

std::vector<TableRecord> read_with_header(const std::filesystem::path& path, TableFormat format) {
  if (!std::filesystem::exists(path)) {
    throw DataError("corpus file '" + path.string() + "' does not exist");
  }
  auto records = read_table(path, format);
  if (records.empty()) throw DataError("'" + path.string() + "' has no header row");
  return records;
}

void check_width(const TableRecord& record, std::size_t width) {
  if (record.fields.size() != width) {
    throw DataError("line " + std::to_string(record.line) + ": expected " + std::to_string(width) +
                    " fields, found " + std::to_string(record.fields.size()));
  }
}

Label parse_label_at(const TableRecord& record, std::size_t column) {
  try {
    return parse_label(record.fields[column]);
  } catch (const DataError& e) {
    throw DataError("line " + std::to_string(record.line) + ": " + e.what());
  }
}

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

}  // namespace

Label parse_label(std::string_view text) {
  const auto value = trim_lower(text);
  if (value == "hate") return Label::kHate;
  if (value == "offensive") return Label::kOffensive;
  if (value == "neither") return Label::kNeither;
  throw DataError("unknown label '" + std::string(text) + "'");
}

Corpus::Corpus(std::vector<LabeledDoc> docs) : docs_(std::move(docs)) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(docs_.size());
  for (const auto& doc : docs_) {
    if (doc.id.empty()) throw DataError("document with empty id");
    if (!seen.insert(doc.id).second) throw DataError("duplicate id '" + doc.id + "'");
    ++counts_[static_cast<std::size_t>(to_index(doc.label))];
  }
}

Corpus Corpus::subset(const std::vector<std::size_t>& indices) const {
  std::vector<LabeledDoc> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(docs_.at(i));
  return Corpus(std::move(out));
}

Corpus load_corpus(const std::filesystem::path& path, TableFormat format) {
  const auto records = read_with_header(path, format);
  const auto cols = resolve_columns(records.front(), /*require_label=*/true);
  const auto width = records.front().fields.size();

  std::vector<LabeledDoc> docs;
  docs.reserve(records.size() - 1);
  std::unordered_set<std::string> ids;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& record = records[r];
    check_width(record, width);
    LabeledDoc doc{record.fields[cols.id], record.fields[cols.text],
                   parse_label_at(record, *cols.label)};
    if (doc.id.empty()) throw DataError("line " + std::to_string(record.line) + ": empty id");
    if (!ids.insert(doc.id).second) {
      throw DataError("line " + std::to_string(record.line) + ": duplicate id '" + doc.id + "'");
    }
    docs.push_back(std::move(doc));
  }
  return Corpus(std::move(docs));
}

std::vector<InputDoc> load_inputs(const std::filesystem::path& path, TableFormat format) {
  const auto records = read_with_header(path, format);
  const auto cols = resolve_columns(records.front(), /*require_label=*/false);
  const auto width = records.front().fields.size();

  std::vector<InputDoc> docs;
  docs.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& record = records[r];
    check_width(record, width);
    InputDoc doc{record.fields[cols.id], record.fields[cols.text], std::nullopt};
    if (cols.label && !trim_lower(record.fields[*cols.label]).empty()) {
      doc.label = parse_label_at(record, *cols.label);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path, TableFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_row(out, {"id", "text", "label"}, format);
  for (const auto& doc : corpus.docs()) {
    write_row(out, {doc.id, doc.text, std::string(class_name(to_index(doc.label)))}, format);
  }
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

TrainTestSplit stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("test fraction must lie in (0, 1)");
  }
  const auto& counts = corpus.class_counts();
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (counts[c] < 2) {
      throw std::invalid_argument("class '" + std::string(class_name(static_cast<int>(c))) +
                                  "' has fewer than 2 documents");
    }
  }

  std::array<std::size_t, kNumClasses> test_counts{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const auto want = round_half_up(test_fraction * static_cast<double>(counts[c]));
    test_counts[c] = std::clamp<std::size_t>(want, 1, counts[c] - 1);
    assigned += test_counts[c];
  }
  const auto target = round_half_up(test_fraction * static_cast<double>(corpus.size()));
  if (assigned != target) {
    const auto largest = static_cast<std::size_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    const auto adjusted = static_cast<long long>(test_counts[largest]) +
                          static_cast<long long>(target) - static_cast<long long>(assigned);
    test_counts[largest] = static_cast<std::size_t>(
        std::clamp<long long>(adjusted, 1, static_cast<long long>(counts[largest]) - 1));
  }

  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    by_class[static_cast<std::size_t>(to_index(corpus[i].label))].push_back(i);
  }
  Pcg32 rng(seed);
  std::vector<bool> in_test(corpus.size(), false);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    shuffle(std::span<std::size_t>(by_class[c]), rng);
    for (std::size_t j = 0; j < test_counts[c]; ++j) in_test[by_class[c][j]] = true;
  }

  std::vector<std::size_t> train_idx, test_idx;
  for (std::size_t i = 0; i < corpus.size(); ++i) (in_test[i] ? test_idx : train_idx).push_back(i);
  return {corpus.subset(train_idx), corpus.subset(test_idx)};
}

Corpus downsample_to_minority(const Corpus& corpus, std::uint64_t seed) {
  if (corpus.empty()) throw std::invalid_argument("cannot down-sample an empty corpus");
  const auto& counts = corpus.class_counts();
  const auto minority = *std::min_element(counts.begin(), counts.end());

  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    by_class[static_cast<std::size_t>(to_index(corpus[i].label))].push_back(i);
  }
  Pcg32 rng(seed);
  std::vector<bool> keep(corpus.size(), false);
  for (auto& members : by_class) {
    shuffle(std::span<std::size_t>(members), rng);
    for (std::size_t j = 0; j < minority; ++j) keep[members[j]] = true;
  }
  std::vector<std::size_t> kept;
  kept.reserve(minority * kNumClasses);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (keep[i]) kept.push_back(i);
  }
  return corpus.subset(kept);
}

std::vector<Fold> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > n) throw std::invalid_argument("k-fold requires 2 <= k <= n");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Pcg32 rng(seed);
  shuffle(std::span<std::size_t>(order), rng);

  std::vector<std::size_t> fold_of(n);
  const std::size_t base = n / k, extra = n % k;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    for (std::size_t j = 0; j < size; ++j) fold_of[order[pos++]] = f;
  }

  std::vector<Fold> folds(k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < k; ++f) (fold_of[i] == f ? folds[f].valid : folds[f].train).push_back(i);
  }
  return folds;
}

}  // namespace boostlex
