#ifndef BOOSTLEX_TESTS_EVAL_FIXTURES_H_
#define BOOSTLEX_TESTS_EVAL_FIXTURES_H_

#include "boostlex/eval/pipeline.h"
#include "boostlex/eval/synthetic.h"
#include "test_util.h"

namespace boostlex::testing {

// Shipped lexicon plus a tagger trained on generated sentences.
inline eval::Resources synthetic_resources(std::size_t sentences = 600, int epochs = 5) {
  const auto tagged = eval::generate_tagged_sentences(sentences, 7);
  return {text::SentimentLexicon::load(data_path("lexicon.tsv")), text::train_pos_tagger(tagged, epochs, 7)};
}

// Small, fast settings for unit tests.
inline eval::PipelineConfig quick_config(int stage) {
  eval::PipelineConfig config;
  config.featurizer.stage = stage;
  config.params.rounds = 20;
  config.params.max_depth = 4;
  config.params.eta = 0.3;
  return config;
}

}  // namespace boostlex::testing

#endif  // BOOSTLEX_TESTS_EVAL_FIXTURES_H_
