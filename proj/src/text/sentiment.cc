#include "boostlex/text/sentiment.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "boostlex/common.h"

namespace boostlex::text {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

constexpr std::string_view kNegators[] = {
    "not",     "no",       "never",    "none",      "nobody",   "nothing", "neither", "nor",
    "nowhere", "cannot",   "can't",    "cant",      "don't",    "dont",    "doesn't", "doesnt",
    "didn't",  "didnt",    "isn't",    "isnt",      "aren't",   "arent",   "wasn't",  "wasnt",
    "weren't", "werent",   "won't",    "wont",      "wouldn't", "wouldnt", "shouldn't",
    "couldn't", "couldnt", "ain't",    "aint",      "hasn't",   "haven't", "hadn't",  "without",
    "hardly",  "rarely",   "seldom",   "mustn't",   "needn't",  "never"};

constexpr double kBoost = 0.293;

struct Booster {
  std::string_view token;
  double scalar;
};
constexpr Booster kBoosters[] = {
    {"very", kBoost},         {"really", kBoost},      {"extremely", kBoost},
    {"so", kBoost},           {"totally", kBoost},     {"absolutely", kBoost},
    {"completely", kBoost},   {"incredibly", kBoost},  {"super", kBoost},
    {"hella", kBoost},        {"too", kBoost},         {"most", kBoost},
    {"more", kBoost},         {"especially", kBoost},  {"utterly", kBoost},
    {"truly", kBoost},        {"fucking", kBoost},     {"freaking", kBoost},
    {"damn", kBoost},         {"deeply", kBoost},      {"highly", kBoost},
    {"slightly", -kBoost},    {"somewhat", -kBoost},   {"barely", -kBoost},
    {"kinda", -kBoost},       {"sorta", -kBoost},      {"kind", -kBoost},
    {"sort", -kBoost},        {"little", -kBoost},     {"less", -kBoost},
    {"marginally", -kBoost},  {"partly", -kBoost},     {"scarcely", -kBoost}};

}  // namespace

SentimentLexicon::SentimentLexicon() {
  for (auto n : kNegators) negators_.emplace(n);
  for (const auto& b : kBoosters) boosters_.emplace(std::string(b.token), b.scalar);
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open sentiment lexicon '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

SentimentLexicon SentimentLexicon::parse(std::string_view content) {
  SentimentLexicon lexicon;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  if (content.starts_with("\xEF\xBB\xBF")) pos = 3;
  while (pos <= content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw DataError("line " + std::to_string(line_no) + ": expected token<TAB>valence");
    }
    auto value_text = line.substr(tab + 1);
    if (auto extra = value_text.find('\t'); extra != std::string_view::npos) {
      value_text = value_text.substr(0, extra);  // tolerate trailing columns
    }
    double value = 0;
    try {
      std::size_t used = 0;
      value = std::stod(std::string(value_text), &used);
      if (used != value_text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw DataError("line " + std::to_string(line_no) + ": bad valence '" + std::string(value_text) + "'");
    }
    if (!std::isfinite(value)) {
      throw DataError("line " + std::to_string(line_no) + ": non-finite valence");
    }
    lexicon.set_valence(line.substr(0, tab), value);
  }
  return lexicon;
}

void SentimentLexicon::set_valence(std::string_view token, double valence) {
  if (!std::isfinite(valence)) throw std::invalid_argument("non-finite valence");
  entries_[lower(token)] = valence;
}

void SentimentLexicon::set_booster(std::string_view token, double scalar) { boosters_[lower(token)] = scalar; }

void SentimentLexicon::add_negator(std::string_view token) { negators_.insert(lower(token)); }

void SentimentLexicon::clear_rules() {
  boosters_.clear();
  negators_.clear();
}

std::optional<double> SentimentLexicon::valence(std::string_view token) const {
  if (auto it = entries_.find(lower(token)); it != entries_.end()) return it->second;
  return std::nullopt;
}

std::optional<double> SentimentLexicon::booster(std::string_view token) const {
  if (auto it = boosters_.find(lower(token)); it != boosters_.end()) return it->second;
  return std::nullopt;
}

bool SentimentLexicon::is_negator(std::string_view token) const {
  const auto key = lower(token);
  if (negators_.contains(key)) return true;
  return key.size() > 3 && (key.ends_with("n't") || key.ends_with("n\xE2\x80\x99t"));
}

SentimentLexicon SentimentLexicon::negated() const {
  SentimentLexicon out = *this;
  for (auto& [token, value] : out.entries_) value = -value;
  return out;
}

nlohmann::json SentimentLexicon::to_json() const {
  return {{"entries", entries_}, {"boosters", boosters_}, {"negators", negators_}};
}

SentimentLexicon SentimentLexicon::from_json(const nlohmann::json& j) {
  SentimentLexicon out;
  out.entries_ = j.at("entries").get<std::map<std::string, double>>();
  out.boosters_ = j.at("boosters").get<std::map<std::string, double>>();
  out.negators_ = j.at("negators").get<std::set<std::string>>();
  return out;
}

SentimentScores sentiment_scores(std::span<const Token> tokens, const SentimentLexicon& lexicon) {
  std::vector<std::string_view> prev_words;  // word tokens seen so far
  double sum = 0;
  std::size_t n_neg = 0, n_neu = 0, n_pos = 0;

  for (const auto& tok : tokens) {
    if (tok.kind != TokenKind::kWord && tok.kind != TokenKind::kEmoji) continue;
    double v = lexicon.valence(tok.text).value_or(0.0);
    if (v != 0.0 && !prev_words.empty()) {
      if (auto b = lexicon.booster(prev_words.back())) v += v > 0 ? *b : -*b;
      const std::size_t window = std::min<std::size_t>(SentimentLexicon::kNegationWindow, prev_words.size());
      for (std::size_t k = 0; k < window; ++k) {
        if (lexicon.is_negator(prev_words[prev_words.size() - 1 - k])) {
          v *= SentimentLexicon::kNegationScalar;
          break;
        }
      }
    }
    if (tok.kind == TokenKind::kWord) prev_words.push_back(tok.text);
    sum += v;
    if (v < 0) ++n_neg;
    else if (v > 0) ++n_pos;
    else ++n_neu;
  }

  SentimentScores s;
  const auto scored = n_neg + n_neu + n_pos;
  if (scored > 0) {
    s.neg = static_cast<double>(n_neg) / static_cast<double>(scored);
    s.neu = static_cast<double>(n_neu) / static_cast<double>(scored);
    s.pos = static_cast<double>(n_pos) / static_cast<double>(scored);
  }
  s.compound = sum / std::sqrt(sum * sum + SentimentLexicon::kNormalizationAlpha);
  return s;
}

}  // namespace boostlex::text
