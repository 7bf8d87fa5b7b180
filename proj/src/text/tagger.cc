#include "boostlex/text/tagger.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "boostlex/common.h"
#include "boostlex/rng.h"
#include "boostlex/text/utf8.h"

namespace boostlex::text {

namespace {

constexpr std::string_view kStart = "<S>";

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<std::string> output_tag_inventory() {
  std::vector<std::string> tags(kCoarseTagset.begin(), kCoarseTagset.end());
  tags.insert(tags.end(), kKindTags.begin(), kKindTags.end());
  return tags;
}

std::vector<TaggedSentence> parse_tagged_corpus(std::string_view content) {
  std::vector<TaggedSentence> out;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string item;
    TaggedSentence sentence;
    while (fields >> item) {
      const auto slash = item.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == item.size()) {
        throw DataError("tagged corpus line " + std::to_string(line_no) + ": malformed item '" + item + "'");
      }
      sentence.words.push_back(item.substr(0, slash));
      sentence.tags.push_back(item.substr(slash + 1));
    }
    if (!sentence.words.empty()) out.push_back(std::move(sentence));
  }
  return out;
}

std::vector<TaggedSentence> load_tagged_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open tagged corpus '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tagged_corpus(buffer.str());
}

TaggerModel::TaggerModel(std::vector<std::string> tagset, std::string default_tag)
    : tagset_(std::move(tagset)) {
  if (tagset_.empty()) throw std::invalid_argument("tagger needs a nonempty tagset");
  default_index_ = tag_index(default_tag);
}

std::size_t TaggerModel::tag_index(std::string_view tag) const {
  const auto it = std::find(tagset_.begin(), tagset_.end(), tag);
  if (it == tagset_.end()) throw std::invalid_argument("tag '" + std::string(tag) + "' is not in the tagset");
  return static_cast<std::size_t>(it - tagset_.begin());
}

void TaggerModel::set_weight(const std::string& feature, std::string_view tag, double value) {
  auto& row = weights_[feature];
  row.resize(tagset_.size(), 0.0);
  row[tag_index(tag)] = value;
}

double TaggerModel::weight(const std::string& feature, std::string_view tag) const {
  const auto it = weights_.find(feature);
  return it == weights_.end() ? 0.0 : it->second[tag_index(tag)];
}

std::size_t TaggerModel::predict(const std::vector<std::string>& features) const {
  std::vector<double> scores(tagset_.size(), 0.0);
  for (const auto& f : features) {
    const auto it = weights_.find(f);
    if (it == weights_.end()) continue;
    for (std::size_t t = 0; t < scores.size(); ++t) scores[t] += it->second[t];
  }
  std::size_t best = default_index_;
  for (std::size_t t = 0; t < scores.size(); ++t) {
    if (scores[t] > scores[best]) best = t;
  }
  return best;
}

std::vector<std::string> tagger_features(std::span<const std::string> words, std::size_t i,
                                         std::string_view prev, std::string_view prev2) {
  const std::string& word = words[i];
  const auto lower = lower_ascii(word);
  const auto cps = decode_utf8(lower);
  std::vector<std::string> f;
  f.reserve(8);
  f.push_back("w=" + lower);
  for (std::size_t k = 1; k <= 3 && k <= cps.size(); ++k) {
    f.push_back("s" + std::to_string(k) + "=" + encode_utf8(std::u32string_view(cps).substr(cps.size() - k)));
  }
  f.push_back("p1=" + std::string(prev));
  f.push_back("p2=" + std::string(prev2) + "|" + std::string(prev));
  if (!word.empty() && std::isupper(static_cast<unsigned char>(word.front()))) f.push_back("cap");
  if (std::any_of(word.begin(), word.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    f.push_back("num");
  }
  return f;
}

std::vector<std::string> TaggerModel::tag_words(std::span<const std::string> words) const {
  std::vector<std::string> tags;
  tags.reserve(words.size());
  std::string prev(kStart), prev2(kStart);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& tag = tagset_[predict(tagger_features(words, i, prev, prev2))];
    tags.push_back(tag);
    prev2 = std::move(prev);
    prev = tag;
  }
  return tags;
}

nlohmann::json TaggerModel::to_json() const {
  // std::map gives a stable key order in the serialized file.
  std::map<std::string, std::vector<double>> sorted(weights_.begin(), weights_.end());
  return {{"tagset", tagset_}, {"default_tag", default_tag()}, {"weights", sorted}};
}

TaggerModel TaggerModel::from_json(const nlohmann::json& j) {
  TaggerModel model(j.at("tagset").get<std::vector<std::string>>(), j.at("default_tag").get<std::string>());
  for (const auto& [feature, row] : j.at("weights").items()) {
    auto values = row.get<std::vector<double>>();
    if (values.size() != model.tagset_.size()) {
      throw DataError("tagger weight row for '" + feature + "' has the wrong width");
    }
    model.weights_.emplace(feature, std::move(values));
  }
  return model;
}

class PerceptronTrainer {
 public:
  explicit PerceptronTrainer(TaggerModel& model) : model_(model) {}

  void update(const std::vector<std::string>& features, std::size_t truth, std::size_t guess) {
    ++step_;
    if (truth == guess) return;
    const auto width = model_.tagset_.size();
    for (const auto& f : features) {
      auto& w = model_.weights_[f];
      auto& acc = accum_[f];
      if (w.empty()) {
        w.assign(width, 0.0);
        acc.totals.assign(width, 0.0);
        acc.stamps.assign(width, 0);
      }
      bump(w, acc, truth, 1.0);
      bump(w, acc, guess, -1.0);
    }
  }

  std::size_t predict(const std::vector<std::string>& features) const { return model_.predict(features); }
  const std::string& tag(std::size_t i) const { return model_.tagset_[i]; }

  // Replaces each weight with its average over all steps.
  void finalize() {
    for (auto& [feature, w] : model_.weights_) {
      auto& acc = accum_.at(feature);
      for (std::size_t t = 0; t < w.size(); ++t) {
        const double total = acc.totals[t] + static_cast<double>(step_ - acc.stamps[t]) * w[t];
        w[t] = step_ > 0 ? total / static_cast<double>(step_) : 0.0;
      }
    }
  }

 private:
  struct Accumulator {
    std::vector<double> totals;
    std::vector<std::uint64_t> stamps;
  };

  void bump(std::vector<double>& w, Accumulator& acc, std::size_t t, double delta) {
    acc.totals[t] += static_cast<double>(step_ - acc.stamps[t]) * w[t];
    acc.stamps[t] = step_;
    w[t] += delta;
  }

  TaggerModel& model_;
  std::unordered_map<std::string, Accumulator> accum_;
  std::uint64_t step_ = 0;
};

TaggerModel train_pos_tagger(std::span<const TaggedSentence> corpus, int epochs, std::uint64_t seed,
                             std::span<const std::string_view> tagset) {
  if (corpus.empty()) throw std::invalid_argument("tagger training corpus is empty");
  if (epochs < 1) throw std::invalid_argument("tagger needs at least one epoch");
  std::vector<std::string> tags(tagset.begin(), tagset.end());

  std::vector<std::size_t> freq(tags.size(), 0);
  std::vector<std::vector<std::size_t>> gold(corpus.size());
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& sentence = corpus[s];
    if (sentence.words.empty()) throw std::invalid_argument("empty sentence in tagger corpus");
    if (sentence.words.size() != sentence.tags.size()) {
      throw std::invalid_argument("word/tag count mismatch in tagger corpus");
    }
    for (const auto& tag : sentence.tags) {
      const auto it = std::find(tags.begin(), tags.end(), tag);
      if (it == tags.end()) throw std::invalid_argument("tag '" + tag + "' is outside the tagset");
      const auto idx = static_cast<std::size_t>(it - tags.begin());
      gold[s].push_back(idx);
      ++freq[idx];
    }
  }
  const auto default_idx = static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());

  TaggerModel model(tags, tags[default_idx]);
  PerceptronTrainer trainer(model);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  Pcg32 rng(seed);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    shuffle(std::span<std::size_t>(order), rng);
    for (auto s : order) {
      const auto& words = corpus[s].words;
      std::string prev(kStart), prev2(kStart);
      for (std::size_t i = 0; i < words.size(); ++i) {
        const auto features = tagger_features(words, i, prev, prev2);
        const auto guess = trainer.predict(features);
        trainer.update(features, gold[s][i], guess);
        prev2 = std::move(prev);
        prev = trainer.tag(guess);
      }
    }
  }
  trainer.finalize();
  return model;
}

std::vector<std::string> pos_tag(std::span<const Token> tokens, const TaggerModel& model) {
  std::vector<std::string> words;
  for (const auto& tok : tokens) {
    if (tok.kind == TokenKind::kWord) words.push_back(tok.text);
  }
  const auto word_tags = model.tag_words(words);

  std::vector<std::string> tags;
  tags.reserve(tokens.size());
  std::size_t w = 0;
  for (const auto& tok : tokens) {
    switch (tok.kind) {
      case TokenKind::kWord: tags.push_back(word_tags[w++]); break;
      case TokenKind::kHashtag: tags.emplace_back("HT"); break;
      case TokenKind::kMention: tags.emplace_back("AT"); break;
      case TokenKind::kUrl: tags.emplace_back("URL"); break;
      case TokenKind::kEmoji: tags.emplace_back("EMJ"); break;
      case TokenKind::kPunctuation: tags.emplace_back("PUNCT"); break;
      case TokenKind::kNumber: tags.emplace_back("NUM"); break;
      case TokenKind::kRetweetMarker: tags.emplace_back("RT"); break;
    }
  }
  return tags;
}

}  // namespace boostlex::text
