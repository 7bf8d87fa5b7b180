#ifndef BOOSTLEX_EVAL_SYNTHETIC_H_
#define BOOSTLEX_EVAL_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "boostlex/corpus.h"
#include "boostlex/text/tagger.h"

namespace boostlex::eval {

// Template-generated tweets. Each class has its own content vocabulary,
// sentiment polarity and symbol habits:
//   hate       strongly negative words, mentions, hashtags, retweets
//   offensive  mildly negative words, ALL-CAPS, exclamations
//   neither    positive words, emoji, urls, periods, place/person names
// With probability `noise` each content word is drawn from another class's
// pool and each symbol habit from another class's habits.
struct SyntheticConfig {
  std::size_t docs_per_class = 1000;
  double noise = 0.2;
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument for noise outside [0, 1] or fewer than two
// docs per class.
Corpus generate_synthetic_corpus(const SyntheticConfig& config);

// Sentences from the same templates with their gold coarse tags, mixing all
// class vocabularies.
std::vector<text::TaggedSentence> generate_tagged_sentences(std::size_t count, std::uint64_t seed);

// Every generator word that carries sentiment, with the valence the shipped
// lexicon is expected to give it.
std::vector<std::pair<std::string, double>> synthetic_valences();

}  // namespace boostlex::eval

#endif  // BOOSTLEX_EVAL_SYNTHETIC_H_
