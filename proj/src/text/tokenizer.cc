#include "boostlex/text/tokenizer.h"

#include <algorithm>
#include <array>

#include "boostlex/text/utf8.h"

namespace boostlex::text {

std::string_view kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kHashtag: return "hashtag";
    case TokenKind::kMention: return "mention";
    case TokenKind::kUrl: return "url";
    case TokenKind::kEmoji: return "emoji";
    case TokenKind::kPunctuation: return "punctuation";
    case TokenKind::kRetweetMarker: return "retweet_marker";
    case TokenKind::kNumber: return "number";
  }
  return "word";
}

namespace {

constexpr std::array<std::u32string_view, 24> kTopLevelDomains = {
    U"com", U"org", U"net", U"edu", U"gov", U"co", U"io", U"ly", U"me", U"us", U"uk", U"ca",
    U"de", U"fr", U"info", U"biz", U"tv", U"gl", U"be", U"it", U"in", U"au", U"app", U"news"};

char32_t lower_ascii(char32_t c) { return (c >= U'A' && c <= U'Z') ? c + 32 : c; }
bool is_ascii_alpha(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool is_host_char(char32_t c) { return is_ascii_alpha(c) || is_ascii_digit(c) || c == U'-'; }
bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

class Scanner {
 public:
  explicit Scanner(std::u32string_view cps) : cps_(cps) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < cps_.size()) {
      if (is_space(cps_[i])) {
        ++i;
        continue;
      }
      auto [end, kind] = next_token(i);
      tokens.push_back(Token{encode_utf8(cps_.substr(i, end - i)), kind, i, end});
      i = end;
    }
    return tokens;
  }

 private:
  char32_t at(std::size_t i) const { return i < cps_.size() ? cps_[i] : U'\0'; }

  bool starts_with_ci(std::size_t i, std::u32string_view prefix) const {
    if (i + prefix.size() > cps_.size()) return false;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      if (lower_ascii(cps_[i + k]) != prefix[k]) return false;
    }
    return true;
  }

  std::pair<std::size_t, TokenKind> next_token(std::size_t i) const {
    if (i == 0 && at(0) == U'R' && at(1) == U'T' &&
        (cps_.size() == 2 || is_space(at(2)) || at(2) == U':')) {
      return {2, TokenKind::kRetweetMarker};
    }
    if (auto end = match_url(i); end > i) return {end, TokenKind::kUrl};
    if (cps_[i] == U'@') {
      std::size_t j = i + 1;
      while (j < cps_.size() && (is_ascii_alpha(cps_[j]) || is_ascii_digit(cps_[j]) || cps_[j] == U'_')) ++j;
      if (j > i + 1) return {j, TokenKind::kMention};
    }
    if (cps_[i] == U'#') {
      std::size_t j = i + 1;
      while (j < cps_.size() && is_word_char(cps_[j])) ++j;
      if (j > i + 1) return {j, TokenKind::kHashtag};
    }
    if (is_emoji(cps_[i])) return {match_emoji(i), TokenKind::kEmoji};
    if (is_ascii_digit(cps_[i])) {
      std::size_t j = i;
      while (is_ascii_digit(at(j))) ++j;
      while ((at(j) == U'.' || at(j) == U',') && is_ascii_digit(at(j + 1))) {
        ++j;
        while (is_ascii_digit(at(j))) ++j;
      }
      if (!is_word_char(at(j))) return {j, TokenKind::kNumber};
      // Alphanumeric like "4u": falls through to word.
    }
    if (!is_word_char(cps_[i])) return {i + 1, TokenKind::kPunctuation};
    return {match_word(i), TokenKind::kWord};
  }

  std::size_t match_word(std::size_t i) const {
    std::size_t j = i;
    while (j < cps_.size()) {
      if (is_word_char(cps_[j])) {
        ++j;
      } else if (is_apostrophe(cps_[j]) && j > i && is_word_char(at(j + 1))) {
        j += 2;
      } else {
        break;
      }
    }
    return j;
  }

  std::size_t match_emoji(std::size_t i) const {
    std::size_t j = i + 1;
    if (cps_[i] >= 0x1F1E6 && cps_[i] <= 0x1F1FF && at(j) >= 0x1F1E6 && at(j) <= 0x1F1FF) ++j;
    while (j < cps_.size() && is_emoji_modifier(cps_[j])) {
      if (cps_[j] == 0x200D) {
        if (!is_emoji(at(j + 1))) break;
        j += 2;
      } else {
        ++j;
      }
    }
    return j;
  }

  // Extends a URL to the next whitespace, then gives back trailing
  // sentence punctuation.
  std::size_t url_tail(std::size_t j, std::size_t start) const {
    while (j < cps_.size() && !is_space(cps_[j])) ++j;
    static constexpr std::u32string_view kTrailing = U".,!?;:)]}'\"";
    while (j > start + 1 && kTrailing.find(cps_[j - 1]) != std::u32string_view::npos) --j;
    return j;
  }

  std::size_t match_url(std::size_t i) const {
    for (std::u32string_view scheme : {std::u32string_view(U"https://"), std::u32string_view(U"http://")}) {
      if (starts_with_ci(i, scheme) && i + scheme.size() < cps_.size() &&
          !is_space(cps_[i + scheme.size()])) {
        return url_tail(i + scheme.size(), i);
      }
    }
    if (starts_with_ci(i, U"www.") && is_host_char(at(i + 4))) return url_tail(i + 4, i);

    // Bare domain: host labels ending in a known TLD, at a word boundary.
    if (!is_host_char(cps_[i]) || cps_[i] == U'-') return i;
    if (i > 0 && (is_word_char(cps_[i - 1]) || cps_[i - 1] == U'@' || cps_[i - 1] == U'#')) return i;
    std::size_t j = i;
    std::size_t last_dot = 0;
    int labels = 0;
    while (true) {
      const std::size_t label_start = j;
      while (is_host_char(at(j))) ++j;
      if (j == label_start) break;
      ++labels;
      if (at(j) == U'.' && is_host_char(at(j + 1))) {
        last_dot = j;
        ++j;
      } else {
        break;
      }
    }
    if (labels < 2) return i;
    std::u32string tld;
    for (std::size_t k = last_dot + 1; k < j; ++k) tld.push_back(lower_ascii(cps_[k]));
    if (std::find(kTopLevelDomains.begin(), kTopLevelDomains.end(), tld) == kTopLevelDomains.end()) {
      return i;
    }
    if (is_word_char(at(j))) return i;
    if (at(j) == U'/') return url_tail(j, i);
    return j;
  }

  std::u32string_view cps_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  const auto cps = decode_utf8(text);
  return Scanner(cps).run();
}

}  // namespace boostlex::text
