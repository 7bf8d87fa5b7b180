#ifndef BOOSTLEX_TEXT_UTF8_H_
#define BOOSTLEX_TEXT_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace boostlex::text {

// Decodes UTF-8. Invalid bytes decode to U+FFFD one byte at a time, so every
// input yields a code point sequence.
std::u32string decode_utf8(std::string_view bytes);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view cps);

bool is_space(char32_t cp);
bool is_emoji(char32_t cp);
// Modifiers that attach to a preceding emoji: variation selectors, skin
// tones, zero-width joiner.
bool is_emoji_modifier(char32_t cp);
bool is_ascii_punct(char32_t cp);
// Letters, digits, underscore and non-ASCII code points that are neither
// whitespace, emoji, nor general punctuation.
bool is_word_char(char32_t cp);

}  // namespace boostlex::text

#endif  // BOOSTLEX_TEXT_UTF8_H_
