#ifndef BOOSTLEX_TEXT_TAGGER_H_
#define BOOSTLEX_TEXT_TAGGER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "boostlex/text/tokenizer.h"

namespace boostlex::text {

// Coarse word tagset learned by the tagger.
inline constexpr std::array<std::string_view, 14> kCoarseTagset = {
    "NN", "NNP", "VB", "VBD", "VBG", "JJ", "RB", "PRP", "IN", "DT", "CC", "CD", "UH", "X"};

// Tags assigned to non-word tokens by kind, never learned.
inline constexpr std::array<std::string_view, 7> kKindTags = {"HT", "AT", "URL", "EMJ", "PUNCT", "NUM", "RT"};

// Every tag pos_tag can emit: coarse tagset followed by kind tags.
std::vector<std::string> output_tag_inventory();

struct TaggedSentence {
  std::vector<std::string> words;
  std::vector<std::string> tags;
};

// One sentence per line, space-separated `token/TAG` pairs; the last '/'
// splits token from tag. Throws DataError with the line number.
std::vector<TaggedSentence> parse_tagged_corpus(std::string_view content);
std::vector<TaggedSentence> load_tagged_corpus(const std::filesystem::path& path);

// Greedy left-to-right averaged perceptron. Weights are the finalized
// averages; the model is immutable once trained.
class TaggerModel {
 public:
  TaggerModel(std::vector<std::string> tagset, std::string default_tag);

  const std::vector<std::string>& tagset() const { return tagset_; }
  const std::string& default_tag() const { return tagset_[default_index_]; }
  std::size_t num_features() const { return weights_.size(); }

  // Throws std::invalid_argument for a tag outside the tagset.
  void set_weight(const std::string& feature, std::string_view tag, double value);
  double weight(const std::string& feature, std::string_view tag) const;

  // Tags a sequence of words. Ties and all-zero scores resolve to the
  // default tag first, then to tagset order.
  std::vector<std::string> tag_words(std::span<const std::string> words) const;

  nlohmann::json to_json() const;
  static TaggerModel from_json(const nlohmann::json& j);

  bool operator==(const TaggerModel&) const = default;

 private:
  friend class PerceptronTrainer;

  std::size_t tag_index(std::string_view tag) const;
  std::size_t predict(const std::vector<std::string>& features) const;

  std::vector<std::string> tagset_;
  std::size_t default_index_ = 0;
  std::unordered_map<std::string, std::vector<double>> weights_;
};

// Feature strings for word i given the two previous predicted tags.
std::vector<std::string> tagger_features(std::span<const std::string> words, std::size_t i,
                                         std::string_view prev, std::string_view prev2);

// Trains over shuffled sentence order (seeded). The default tag is the most
// frequent training tag. Throws std::invalid_argument on an empty corpus, an
// empty sentence, a word/tag length mismatch, or a tag outside `tagset`.
TaggerModel train_pos_tagger(std::span<const TaggedSentence> corpus, int epochs, std::uint64_t seed,
                             std::span<const std::string_view> tagset = kCoarseTagset);

// One tag per token: word tokens go through the model (in sequence, word
// context only); other kinds get HT, AT, URL, EMJ, PUNCT, NUM or RT.
std::vector<std::string> pos_tag(std::span<const Token> tokens, const TaggerModel& model);

}  // namespace boostlex::text

#endif  // BOOSTLEX_TEXT_TAGGER_H_
