#include "boostlex/featurizer.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace boostlex {

namespace {

struct DenseField {
  const char* name;
  int stage;
  double text::SurfaceStats::*member;
};

constexpr DenseField kDenseFields[] = {
    {"char-count", 5, &text::SurfaceStats::char_count},
    {"count", 5, &text::SurfaceStats::word_count},
    {"syllables", 5, &text::SurfaceStats::syllable_total},
    {"average-syl", 5, &text::SurfaceStats::avg_syllables_per_word},
    {"fre", 5, &text::SurfaceStats::fre_score},
    {"fkgl", 5, &text::SurfaceStats::fkgl_score},
    {"hashtags", 3, &text::SurfaceStats::hashtag_count},
    {"mentions", 3, &text::SurfaceStats::mention_count},
    {"urls", 3, &text::SurfaceStats::url_count},
    {"is-retweet", 3, &text::SurfaceStats::is_retweet},
    {"exclamations", 4, &text::SurfaceStats::exclamations},
    {"questions", 4, &text::SurfaceStats::question_marks},
    {"periods", 4, &text::SurfaceStats::periods},
    {"all-caps", 4, &text::SurfaceStats::all_caps_words},
    {"emojis", 4, &text::SurfaceStats::emoji_count},
};

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void check_stage(int stage) {
  if (stage < kMinStage || stage > kMaxStage) throw std::invalid_argument("feature stage must be in 1..5");
}

}  // namespace

std::string_view stage_description(int stage) {
  switch (stage) {
    case 1: return "Sent";
    case 2: return "Sent, POS + NER";
    case 3: return "Sent, POS + NER, Hash + Men";
    case 4: return "Sent, POS + NER, Hash + Men, Text Symb";
    case 5: return "Row (4) features, POS + TF-IDF";
    default: return "?";
  }
}

std::vector<std::string> word_terms(std::span<const text::Token> tokens) {
  using text::TokenKind;
  std::vector<std::string> terms;
  for (const auto& tok : tokens) {
    switch (tok.kind) {
      case TokenKind::kWord:
      case TokenKind::kHashtag:
      case TokenKind::kEmoji: terms.push_back(lower_ascii(tok.text)); break;
      case TokenKind::kMention: terms.emplace_back("@user"); break;
      case TokenKind::kUrl: terms.emplace_back("<url>"); break;
      case TokenKind::kNumber: terms.emplace_back("<num>"); break;
      case TokenKind::kPunctuation:
      case TokenKind::kRetweetMarker: break;
    }
  }
  return terms;
}

DocAnalysis analyze(std::string_view text, const text::SentimentLexicon& lexicon, const text::TaggerModel& tagger) {
  DocAnalysis doc;
  doc.tokens = text::tokenize(text);
  doc.tags = text::pos_tag(doc.tokens, tagger);
  doc.word_terms = word_terms(doc.tokens);
  doc.surface = text::surface_stats(text, doc.tokens);
  doc.sentiment = text::sentiment_scores(doc.tokens, lexicon);
  doc.ner = text::ner_counts(doc.tokens, doc.tags);
  return doc;
}

Featurizer::Featurizer(text::SentimentLexicon lexicon, text::TaggerModel tagger, FeaturizerConfig config)
    : config_(config), lexicon_(std::move(lexicon)), tagger_(std::move(tagger)) {
  check_stage(config_.stage);
  tag_inventory_ = text::output_tag_inventory();
}

Featurizer Featurizer::fit(std::span<const std::string> texts, text::SentimentLexicon lexicon,
                           text::TaggerModel tagger, const FeaturizerConfig& config) {
  Featurizer f(std::move(lexicon), std::move(tagger), config);
  if (config.stage >= 5) {
    const auto n = static_cast<std::ptrdiff_t>(texts.size());
    std::vector<text::TermSequence> words(texts.size()), tags(texts.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto tokens = text::tokenize(texts[static_cast<std::size_t>(i)]);
      words[static_cast<std::size_t>(i)] = word_terms(tokens);
      tags[static_cast<std::size_t>(i)] = text::pos_tag(tokens, f.tagger_);
    }
    f.word_tfidf_ = text::fit_tfidf(words, config.word_tfidf);
    f.pos_tfidf_ = text::fit_tfidf(tags, config.pos_tfidf);
  }
  f.build_registry();
  return f;
}

void Featurizer::build_registry() {
  registry_ = FeatureRegistry{};
  dense_fields_.clear();
  std::vector<std::string> dense;
  for (int i = 0; i < static_cast<int>(std::size(kDenseFields)); ++i) {
    if (config_.stage >= kDenseFields[i].stage) {
      dense_fields_.push_back(i);
      dense.emplace_back(kDenseFields[i].name);
    }
  }
  if (!dense.empty()) registry_.add_block(BlockKind::kDense, std::move(dense));
  registry_.add_block(BlockKind::kSentiment, {"sent-neg", "sent-neu", "sent-pos", "sent-compound"});
  if (config_.stage >= 2) {
    std::vector<std::string> pos;
    for (const auto& tag : tag_inventory_) pos.push_back("pos:" + tag);
    registry_.add_block(BlockKind::kPosCounts, std::move(pos));
    registry_.add_block(BlockKind::kNer, {"ner-entities", "ner-tokens"});
  }
  if (config_.stage >= 5) {
    std::vector<std::string> words, tags;
    for (const auto& t : word_tfidf_->terms()) words.push_back("tfidf:" + t);
    for (const auto& t : pos_tfidf_->terms()) tags.push_back("pos-tfidf:" + t);
    registry_.add_block(BlockKind::kWordTfidf, std::move(words));
    registry_.add_block(BlockKind::kPosTfidf, std::move(tags));
  }
}

FeatureVector Featurizer::assemble(const DocAnalysis& doc) const {
  FeatureVector out(registry_.size());
  auto emit = [&out](std::size_t column, double value) {
    if (value != 0.0) out.push_back(static_cast<std::uint32_t>(column), value);
  };

  for (const auto& block : registry_.blocks()) {
    std::size_t col = block.offset;
    switch (block.kind) {
      case BlockKind::kDense:
        for (int field : dense_fields_) emit(col++, doc.surface.*kDenseFields[field].member);
        break;
      case BlockKind::kSentiment:
        emit(col++, doc.sentiment.neg);
        emit(col++, doc.sentiment.neu);
        emit(col++, doc.sentiment.pos);
        emit(col++, doc.sentiment.compound);
        break;
      case BlockKind::kPosCounts: {
        std::vector<double> counts(tag_inventory_.size(), 0.0);
        for (const auto& tag : doc.tags) {
          const auto it = std::find(tag_inventory_.begin(), tag_inventory_.end(), tag);
          if (it != tag_inventory_.end()) counts[static_cast<std::size_t>(it - tag_inventory_.begin())] += 1;
        }
        for (double c : counts) emit(col++, c);
        break;
      }
      case BlockKind::kNer:
        emit(col++, doc.ner.entities);
        emit(col++, doc.ner.entity_tokens);
        break;
      case BlockKind::kWordTfidf:
        for (const auto& [c, v] : text::tfidf_transform(doc.word_terms, *word_tfidf_)) emit(col + c, v);
        col += word_tfidf_->size();
        break;
      case BlockKind::kPosTfidf:
        for (const auto& [c, v] : text::tfidf_transform(doc.tags, *pos_tfidf_)) emit(col + c, v);
        col += pos_tfidf_->size();
        break;
    }
    if (col != block.offset + block.size) {
      throw std::logic_error("feature block '" + std::string(block_name(block.kind)) +
                             "' does not match the registry");
    }
  }
  if (out.dimension() != registry_.size()) throw std::logic_error("feature dimension does not match the registry");
  return out;
}

FeatureVector Featurizer::transform(std::string_view text) const { return assemble(analyze(text, lexicon_, tagger_)); }

std::vector<FeatureVector> Featurizer::transform_batch(std::span<const std::string> texts) const {
  std::vector<FeatureVector> out(texts.size());
  const auto n = static_cast<std::ptrdiff_t>(texts.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = transform(texts[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<FeatureVector> Featurizer::transform_batch_serial(std::span<const std::string> texts) const {
  std::vector<FeatureVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(transform(t));
  return out;
}

nlohmann::json Featurizer::to_json() const {
  nlohmann::json j = {{"stage", config_.stage}, {"lexicon", lexicon_.to_json()}, {"tagger", tagger_.to_json()}};
  if (word_tfidf_) j["word_tfidf"] = word_tfidf_->to_json();
  if (pos_tfidf_) j["pos_tfidf"] = pos_tfidf_->to_json();
  j["registry_fingerprint"] = registry_.fingerprint();
  return j;
}

Featurizer Featurizer::from_json(const nlohmann::json& j) {
  FeaturizerConfig config;
  config.stage = j.at("stage").get<int>();
  Featurizer f(text::SentimentLexicon::from_json(j.at("lexicon")), text::TaggerModel::from_json(j.at("tagger")),
               config);
  if (config.stage >= 5) {
    f.word_tfidf_ = text::TfidfModel::from_json(j.at("word_tfidf"));
    f.pos_tfidf_ = text::TfidfModel::from_json(j.at("pos_tfidf"));
    f.config_.word_tfidf = f.word_tfidf_->config();
    f.config_.pos_tfidf = f.pos_tfidf_->config();
  }
  f.build_registry();
  return f;
}

}  // namespace boostlex
