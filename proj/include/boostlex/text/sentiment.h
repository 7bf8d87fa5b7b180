#ifndef BOOSTLEX_TEXT_SENTIMENT_H_
#define BOOSTLEX_TEXT_SENTIMENT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "boostlex/text/tokenizer.h"

namespace boostlex::text {

// Valence lexicon plus negation/intensity rules. Keys are stored lowercase;
// lookups lowercase their argument.
class SentimentLexicon {
 public:
  static constexpr double kNegationScalar = -0.74;
  static constexpr double kNormalizationAlpha = 15.0;
  static constexpr int kNegationWindow = 3;

  // Starts with the built-in negator and booster lists and no valences.
  SentimentLexicon();

  // `token<TAB>valence` lines; '#' starts a comment line. Throws DataError
  // with the line number on malformed or non-finite entries.
  static SentimentLexicon load(const std::filesystem::path& path);
  static SentimentLexicon parse(std::string_view content);

  // Throws std::invalid_argument on a non-finite valence.
  void set_valence(std::string_view token, double valence);
  void set_booster(std::string_view token, double scalar);
  void add_negator(std::string_view token);
  void clear_rules();

  std::optional<double> valence(std::string_view token) const;
  std::optional<double> booster(std::string_view token) const;
  bool is_negator(std::string_view token) const;

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, double>& entries() const { return entries_; }

  // Copy with every valence negated (used by the odd-symmetry property).
  SentimentLexicon negated() const;

  nlohmann::json to_json() const;
  static SentimentLexicon from_json(const nlohmann::json& j);

 private:
  std::map<std::string, double> entries_;
  std::map<std::string, double> boosters_;
  std::set<std::string> negators_;
};

struct SentimentScores {
  double neg = 0;
  double neu = 1;
  double pos = 0;
  double compound = 0;
};

// Scores word and emoji tokens. A negator among the three preceding word
// tokens multiplies a valence by -0.74; a booster as the immediately
// preceding word adds its scalar in the valence's direction (applied before
// negation). compound = S / sqrt(S^2 + 15). neg/neu/pos are the fractions
// of scored tokens whose adjusted valence is negative/zero/positive.
SentimentScores sentiment_scores(std::span<const Token> tokens, const SentimentLexicon& lexicon);

}  // namespace boostlex::text

#endif  // BOOSTLEX_TEXT_SENTIMENT_H_
