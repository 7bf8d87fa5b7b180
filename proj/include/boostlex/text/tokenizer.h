#ifndef BOOSTLEX_TEXT_TOKENIZER_H_
#define BOOSTLEX_TEXT_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace boostlex::text {

enum class TokenKind {
  kWord,
  kHashtag,
  kMention,
  kUrl,
  kEmoji,
  kPunctuation,
  kRetweetMarker,
  kNumber,
};

std::string_view kind_name(TokenKind kind);

struct Token {
  std::string text;      // UTF-8
  TokenKind kind = TokenKind::kWord;
  std::size_t begin = 0;  // code point offsets, half-open
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

// Tweet-aware tokenizer. Kinds are assigned by priority: "RT" at offset 0,
// url (scheme, www. or known-TLD domain), @mention, #hashtag, emoji, number,
// punctuation (one token per character), word. Every non-whitespace code
// point ends up in exactly one token; spans are strictly increasing.
std::vector<Token> tokenize(std::string_view text);

}  // namespace boostlex::text

#endif  // BOOSTLEX_TEXT_TOKENIZER_H_
