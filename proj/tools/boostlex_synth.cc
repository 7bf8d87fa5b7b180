// Writes the synthetic three-class corpus and a matching tagged corpus.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "boostlex/common.h"
#include "boostlex/corpus.h"
#include "boostlex/eval/synthetic.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic hate/offensive/neither corpus", "boostlex_synth"};
  boostlex::eval::SyntheticConfig config;
  std::string out, tagged_out;
  std::size_t tagged_count = 2000;
  app.add_option("--docs-per-class", config.docs_per_class)->check(CLI::Range(2, 10'000'000));
  app.add_option("--noise", config.noise)->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", config.seed);
  app.add_option("--out", out, "corpus file (.csv or .tsv)")->required();
  app.add_option("--tagged-out", tagged_out, "token/TAG sentences for the POS tagger");
  app.add_option("--tagged-count", tagged_count);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    const auto corpus = boostlex::eval::generate_synthetic_corpus(config);
    boostlex::write_corpus(corpus, out, boostlex::guess_table_format(out));
    if (!tagged_out.empty()) {
      std::ofstream f(tagged_out);
      if (!f) throw boostlex::DataError("cannot write " + tagged_out);
      for (const auto& s : boostlex::eval::generate_tagged_sentences(tagged_count, config.seed)) {
        for (std::size_t i = 0; i < s.words.size(); ++i) f << (i ? " " : "") << s.words[i] << '/' << s.tags[i];
        f << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "boostlex_synth: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
