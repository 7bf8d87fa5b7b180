#include "boostlex/eval/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "boostlex/text/tokenizer.h"

namespace boostlex::eval {
namespace {

constexpr std::string_view kStopwords[] = {
    "a",      "about", "after", "again", "all",   "am",    "an",    "and",   "any",   "are",    "as",
    "at",     "be",    "been",  "before", "being", "but",  "by",    "can",   "could", "did",    "do",
    "does",   "doing", "don't", "down",  "for",   "from",  "had",   "has",   "have",  "having", "he",
    "her",    "here",  "hers",  "him",   "his",   "how",   "i",     "i'm",   "if",    "in",     "into",
    "is",     "it",    "it's",  "its",   "just",  "me",    "more",  "most",  "my",    "no",     "nor",
    "not",    "now",   "of",    "off",   "on",    "once",  "only",  "or",    "other", "our",    "out",
    "over",   "own",   "same",  "she",   "so",    "some",  "such",  "than",  "that",  "the",    "their",
    "them",   "then",  "there", "these", "they",  "this",  "those", "through", "to",  "too",    "under",
    "until",  "up",    "very",  "was",   "we",    "were",  "what",  "when",  "where", "which",  "while",
    "who",    "whom",  "why",   "will",  "with",  "would", "you",   "you're", "your", "yours",  "rt",
};

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0 : s / static_cast<double>(v.size());
}

double sample_stdev(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::string lower(std::string s) {
  for (auto& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

nlohmann::json CvSummary::to_json() const {
  nlohmann::json folds_j = nlohmann::json::array();
  for (const auto& f : folds) folds_j.push_back(f.to_json());
  nlohmann::json mean_j, stdev_j;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    mean_j[std::string(kClassNames[c])] = mean_f1[c];
    stdev_j[std::string(kClassNames[c])] = stdev_f1[c];
  }
  return {{"folds", folds_j},
          {"mean_f1", mean_j},
          {"stdev_f1", stdev_j},
          {"mean_macro_f1", mean_macro_f1},
          {"stdev_macro_f1", stdev_macro_f1}};
}

CvSummary cross_validate(const Corpus& corpus, const Resources& resources, const PipelineConfig& config,
                         std::size_t k, std::uint64_t seed) {
  const auto folds = kfold_indices(corpus.size(), k, seed);
  CvSummary s;
  for (const auto& fold : folds) {
    const auto pipeline = fit_pipeline(corpus.subset(fold.train), resources, config);
    s.folds.push_back(evaluate(pipeline, corpus.subset(fold.valid)));
    const auto& vocab = pipeline.featurizer.word_tfidf();
    s.fold_vocabularies.push_back(vocab ? vocab->terms() : std::vector<std::string>{});
  }
  std::vector<double> macro;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::vector<double> f1;
    for (const auto& r : s.folds) f1.push_back(r.per_class[c].f1);
    s.mean_f1[c] = mean(f1);
    s.stdev_f1[c] = sample_stdev(f1);
  }
  for (const auto& r : s.folds) macro.push_back(r.macro_f1);
  s.mean_macro_f1 = mean(macro);
  s.stdev_macro_f1 = sample_stdev(macro);
  return s;
}

std::string render_cv_text(const CvSummary& s) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-6s %9s %9s %9s %9s\n", "fold", "hate", "offensive", "neither", "macro-f1");
  out += buf;
  for (std::size_t i = 0; i < s.folds.size(); ++i) {
    const auto& r = s.folds[i];
    std::snprintf(buf, sizeof buf, "%-6zu %9.4f %9.4f %9.4f %9.4f\n", i + 1, r.per_class[0].f1, r.per_class[1].f1,
                  r.per_class[2].f1, r.macro_f1);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%-6s %9.4f %9.4f %9.4f %9.4f\n", "mean", s.mean_f1[0], s.mean_f1[1], s.mean_f1[2],
                s.mean_macro_f1);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-6s %9.4f %9.4f %9.4f %9.4f\n", "stdev", s.stdev_f1[0], s.stdev_f1[1],
                s.stdev_f1[2], s.stdev_macro_f1);
  out += buf;
  return out;
}

std::vector<GridPoint> grid_search(const Corpus& corpus, const Resources& resources, const PipelineConfig& config,
                                   const std::vector<double>& etas, const std::vector<int>& depths,
                                   const std::vector<int>& rounds, std::size_t k, std::uint64_t seed) {
  const std::vector<double> e = etas.empty() ? std::vector<double>{config.params.eta} : etas;
  const std::vector<int> d = depths.empty() ? std::vector<int>{config.params.max_depth} : depths;
  const std::vector<int> r = rounds.empty() ? std::vector<int>{config.params.rounds} : rounds;
  std::vector<GridPoint> out;
  for (double eta : e) {
    for (int depth : d) {
      for (int n : r) {
        auto c = config;
        c.params.eta = eta;
        c.params.max_depth = depth;
        c.params.rounds = n;
        c.params.validate();
        out.push_back({eta, depth, n, cross_validate(corpus, resources, c, k, seed)});
      }
    }
  }
  return out;
}

std::string render_grid_text(const std::vector<GridPoint>& grid) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-8s %9s %7s %9s %9s\n", "eta", "max_depth", "rounds", "macro-f1", "stdev");
  out += buf;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& g = grid[i];
    std::snprintf(buf, sizeof buf, "%-8g %9d %7d %9.4f %9.4f\n", g.eta, g.max_depth, g.rounds,
                  g.summary.mean_macro_f1, g.summary.stdev_macro_f1);
    out += buf;
    if (g.summary.mean_macro_f1 > grid[best].summary.mean_macro_f1) best = i;
  }
  if (!grid.empty()) {
    std::snprintf(buf, sizeof buf, "best: eta=%g max_depth=%d rounds=%d\n", grid[best].eta, grid[best].max_depth,
                  grid[best].rounds);
    out += buf;
  }
  return out;
}

std::vector<AblationRow> ablation(const Corpus& corpus, const Resources& resources, const PipelineConfig& config,
                                  const std::vector<int>& stages, double test_fraction, std::uint64_t seed) {
  for (int s : stages) {
    if (s < kMinStage || s > kMaxStage) throw std::invalid_argument("stage " + std::to_string(s) + " out of range");
  }
  const auto split = stratified_split(corpus, test_fraction, seed);
  std::vector<AblationRow> rows;
  for (int s : stages) {
    auto c = config;
    c.featurizer.stage = s;
    const auto pipeline = fit_pipeline(split.train, resources, c);
    rows.push_back({s, std::string(stage_description(s)), pipeline.featurizer.registry().size(),
                    evaluate(pipeline, split.test)});
  }
  return rows;
}

std::string render_ablation_text(const std::vector<AblationRow>& rows) {
  std::size_t width = 8;
  for (const auto& r : rows) width = std::max(width, r.features.size());
  std::string out = "Stage  " + pad("Features", width) + "  Neither  Offensive  Hate\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "  %-7.2f  %-9.2f  %.2f\n", r.report.per_class[2].f1, r.report.per_class[1].f1,
                  r.report.per_class[0].f1);
    out += pad(std::to_string(r.stage), 5) + "  " + pad(r.features, width) + buf;
  }
  return out;
}

nlohmann::json ablation_to_json(const std::vector<AblationRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"stage", r.stage},
                   {"features", r.features},
                   {"dimension", r.dimension},
                   {"neither", r.report.per_class[2].f1},
                   {"offensive", r.report.per_class[1].f1},
                   {"hate", r.report.per_class[0].f1},
                   {"report", r.report.to_json()}});
  }
  return out;
}

bool is_stopword(std::string_view w) {
  return std::find(std::begin(kStopwords), std::end(kStopwords), w) != std::end(kStopwords);
}

std::array<std::vector<std::pair<std::string, std::size_t>>, kNumClasses> class_top_terms(const Corpus& corpus,
                                                                                          std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  std::array<std::map<std::string, std::size_t>, kNumClasses> freq;
  for (const auto& d : corpus.docs()) {
    for (const auto& tok : text::tokenize(d.text)) {
      if (tok.kind != text::TokenKind::kWord) continue;
      auto w = lower(tok.text);
      if (w.size() < 2 || is_stopword(w)) continue;
      ++freq[to_index(d.label)][w];
    }
  }
  std::array<std::vector<std::pair<std::string, std::size_t>>, kNumClasses> out;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::vector<std::pair<std::string, std::size_t>> v(freq[c].begin(), freq[c].end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (v.size() > n) v.resize(n);
    out[c] = std::move(v);
  }
  return out;
}

std::string render_top_terms_text(
    const std::array<std::vector<std::pair<std::string, std::size_t>>, kNumClasses>& terms) {
  std::string out;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    out += std::string(kClassNames[c]) + ":";
    for (const auto& [t, f] : terms[c]) out += " " + t + "(" + std::to_string(f) + ")";
    out += "\n";
  }
  return out;
}

}  // namespace boostlex::eval
