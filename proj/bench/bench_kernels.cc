// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <map>
#include <optional>

#include "boostlex/eval/synthetic.h"
#include "boostlex/featurizer.h"
#include "boostlex/gbt/grower.h"
#include "boostlex/gbt/matrix.h"
#include "boostlex/gbt/objective.h"
#include "boostlex/rng.h"

namespace {

using namespace boostlex;

struct GrowData {
  std::vector<FeatureVector> rows;
  gbt::FeatureMatrix matrix;
  std::vector<double> g, h;
};

const GrowData& grow_data(std::size_t n, std::size_t dim) {
  static std::map<std::pair<std::size_t, std::size_t>, GrowData> cache;
  auto& d = cache[{n, dim}];
  if (!d.rows.empty()) return d;
  Pcg32 rng(1);
  for (std::size_t i = 0; i < n; ++i) {
    FeatureVector v(dim);
    for (std::uint32_t c = 0; c < dim; ++c) {
      if (rng.uniform() < 0.7) continue;
      v.push_back(c, rng.uniform() * 10);
    }
    d.rows.push_back(std::move(v));
  }
  d.matrix = gbt::FeatureMatrix(d.rows, dim);
  for (std::size_t i = 0; i < n; ++i) {
    d.g.push_back(rng.uniform() * 2 - 1);
    d.h.push_back(rng.uniform() * 0.25 + 0.01);
  }
  return d;
}

void BM_GrowTreeParallel(benchmark::State& state) {
  const auto& d = grow_data(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const gbt::ColumnIndex columns(d.matrix);
  gbt::TrainParams p;
  for (auto _ : state) benchmark::DoNotOptimize(gbt::grow_tree(d.matrix, columns, d.g, d.h, p));
}

void BM_GrowTreeReference(benchmark::State& state) {
  const auto& d = grow_data(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  gbt::TrainParams p;
  for (auto _ : state) benchmark::DoNotOptimize(gbt::reference::grow_tree(d.matrix, d.g, d.h, p));
}

BENCHMARK(BM_GrowTreeParallel)->Args({2000, 50})->Args({10000, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GrowTreeReference)->Args({2000, 50})->Args({10000, 200})->Unit(benchmark::kMillisecond);

struct FeaturizeData {
  std::vector<std::string> texts;
  std::optional<Featurizer> featurizer;
};

const FeaturizeData& featurize_data() {
  static FeaturizeData d = [] {
    FeaturizeData out;
    for (const auto& doc : eval::generate_synthetic_corpus({500, 0.2, 1}).docs()) out.texts.push_back(doc.text);
    text::SentimentLexicon lexicon;
    for (const auto& [w, v] : eval::synthetic_valences()) lexicon.set_valence(w, v);
    const auto tagger = text::train_pos_tagger(eval::generate_tagged_sentences(1000, 1), 3, 1);
    out.featurizer = Featurizer::fit(out.texts, lexicon, tagger, {});
    return out;
  }();
  return d;
}

void BM_TransformBatch(benchmark::State& state) {
  const auto& d = featurize_data();
  for (auto _ : state) benchmark::DoNotOptimize(d.featurizer->transform_batch(d.texts));
}

void BM_TransformBatchSerial(benchmark::State& state) {
  const auto& d = featurize_data();
  for (auto _ : state) benchmark::DoNotOptimize(d.featurizer->transform_batch_serial(d.texts));
}

BENCHMARK(BM_TransformBatch)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransformBatchSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
