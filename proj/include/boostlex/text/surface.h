#ifndef BOOSTLEX_TEXT_SURFACE_H_
#define BOOSTLEX_TEXT_SURFACE_H_

#include <span>
#include <string_view>

#include "boostlex/text/tokenizer.h"

namespace boostlex::text {

// Maximal vowel groups (a, e, i, o, u, y), minus one for a terminal 'e'
// unless that would reach zero; at least 1. Input must be nonempty ASCII
// letters (any case); throws std::invalid_argument otherwise.
int count_syllables(std::string_view word);

struct SurfaceStats {
  double char_count = 0;
  double word_count = 0;
  double syllable_total = 0;
  double avg_syllables_per_word = 0;
  double all_caps_words = 0;
  double exclamations = 0;
  double question_marks = 0;
  double periods = 0;
  double hashtag_count = 0;
  double mention_count = 0;
  double url_count = 0;
  double emoji_count = 0;
  double is_retweet = 0;
  double fre_score = 0;   // Flesch reading ease
  double fkgl_score = 0;  // Flesch-Kincaid grade level
};

// `tokens` must come from tokenize(text). Sentences for the readability
// formulas are max(1, runs of adjacent ./!/? tokens). With no words both
// readability scores are 0.
SurfaceStats surface_stats(std::string_view text, std::span<const Token> tokens);

}  // namespace boostlex::text

#endif  // BOOSTLEX_TEXT_SURFACE_H_
