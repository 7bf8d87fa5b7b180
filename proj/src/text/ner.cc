#include "boostlex/text/ner.h"

#include <stdexcept>

namespace boostlex::text {

NerCounts ner_counts(std::span<const Token> tokens, std::span<const std::string> tags) {
  if (tags.size() != tokens.size()) throw std::invalid_argument("ner_counts: tags do not align with tokens");
  NerCounts counts;
  bool sentence_start = true;
  bool in_run = false;
  for (const auto& tok : tokens) {
    if (tok.kind != TokenKind::kWord) {
      in_run = false;
      if (tok.kind == TokenKind::kPunctuation && (tok.text == "." || tok.text == "!" || tok.text == "?")) {
        sentence_start = true;
      }
      continue;
    }
    const char first = tok.text.front();
    const bool capitalized = first >= 'A' && first <= 'Z' && tok.text != "I";
    if (capitalized && !sentence_start) {
      if (!in_run) ++counts.entities;
      ++counts.entity_tokens;
      in_run = true;
    } else {
      in_run = false;
    }
    sentence_start = false;
  }
  return counts;
}

}  // namespace boostlex::text
