#ifndef BOOSTLEX_TEXT_NER_H_
#define BOOSTLEX_TEXT_NER_H_

#include <span>
#include <string>

#include "boostlex/text/tokenizer.h"

namespace boostlex::text {

struct NerCounts {
  int entities = 0;
  int entity_tokens = 0;
};

// Capitalization-run heuristic: maximal runs of adjacent capitalized word
// tokens count as one entity each. Sentence-initial words (first word, or
// first word after ./!/?) and the pronoun "I" never take part. `tags` must
// align with `tokens` (std::invalid_argument otherwise).
NerCounts ner_counts(std::span<const Token> tokens, std::span<const std::string> tags);

}  // namespace boostlex::text

#endif  // BOOSTLEX_TEXT_NER_H_
