#include "boostlex/text/surface.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "boostlex/text/utf8.h"

namespace boostlex::text {

namespace {

bool is_vowel(char c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return true;
    default:
      return false;
  }
}

// ASCII letters of a word token, lowercased.
std::string letters_of(std::string_view word) {
  std::string out;
  for (char c : word) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

bool is_all_caps(std::string_view word) {
  int upper = 0;
  for (char c : word) {
    const auto u = static_cast<unsigned char>(c);
    if (std::islower(u)) return false;
    if (std::isupper(u)) ++upper;
  }
  return upper >= 2;
}

}  // namespace

int count_syllables(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("count_syllables: empty word");
  std::string lower;
  lower.reserve(word.size());
  for (char c : word) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("count_syllables: non-alphabetic word '" + std::string(word) + "'");
    }
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  int groups = 0;
  bool in_group = false;
  for (char c : lower) {
    const bool vowel = is_vowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  if (lower.back() == 'e' && groups > 1) --groups;
  return std::max(groups, 1);
}

SurfaceStats surface_stats(std::string_view text, std::span<const Token> tokens) {
  SurfaceStats s;
  s.char_count = static_cast<double>(decode_utf8(text).size());

  std::size_t sentences = 0;
  bool in_terminal_run = false;
  std::size_t prev_end = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const auto& tok = tokens[t];
    bool terminal = false;
    switch (tok.kind) {
      case TokenKind::kWord: {
        s.word_count += 1;
        const auto letters = letters_of(tok.text);
        s.syllable_total += letters.empty() ? 1 : count_syllables(letters);
        if (is_all_caps(tok.text)) s.all_caps_words += 1;
        break;
      }
      case TokenKind::kPunctuation:
        if (tok.text == "!") s.exclamations += 1;
        if (tok.text == "?") s.question_marks += 1;
        if (tok.text == ".") s.periods += 1;
        terminal = tok.text == "!" || tok.text == "?" || tok.text == ".";
        break;
      case TokenKind::kHashtag: s.hashtag_count += 1; break;
      case TokenKind::kMention: s.mention_count += 1; break;
      case TokenKind::kUrl: s.url_count += 1; break;
      case TokenKind::kEmoji: s.emoji_count += 1; break;
      case TokenKind::kRetweetMarker: s.is_retweet = 1; break;
      case TokenKind::kNumber: break;
    }
    if (terminal) {
      const bool continues = in_terminal_run && t > 0 && tok.begin == prev_end;
      if (!continues) ++sentences;
    }
    in_terminal_run = terminal;
    prev_end = tok.end;
  }

  s.avg_syllables_per_word = s.syllable_total / std::max(s.word_count, 1.0);
  if (s.word_count > 0) {
    const double words_per_sentence = s.word_count / static_cast<double>(std::max<std::size_t>(sentences, 1));
    s.fre_score = 206.835 - 1.015 * words_per_sentence - 84.6 * s.avg_syllables_per_word;
    s.fkgl_score = 0.39 * words_per_sentence + 11.8 * s.avg_syllables_per_word - 15.59;
  }
  return s;
}

}  // namespace boostlex::text
