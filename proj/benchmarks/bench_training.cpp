#include <benchmark/benchmark.h>

#include <string>
#include <utility>
#include <vector>

#include "wordsim/autoencoder.hpp"
#include "wordsim/evaluation.hpp"

using namespace wordsim;

namespace {

// n standard words "wNNN", each with two variants.
Lexicon synthetic_lexicon(std::size_t n) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string w = "w" + std::to_string(1000 + i);
    pairs.emplace_back("x" + w.substr(1), w);
    pairs.emplace_back(w + "x", w);
  }
  return Lexicon::from_pairs(pairs);
}

}  // namespace

static void BM_AutoencoderEpoch(benchmark::State& state) {
  const Lexicon lex = synthetic_lexicon(static_cast<std::size_t>(state.range(0)));
  AutoencoderConfig cfg;
  cfg.code_size = 11;
  cfg.depth = 5;
  AutoencoderModel m = AutoencoderModel::build(lex, cfg, 1);
  TrainConfig t;
  t.batch_size = 100;
  t.learning_rate = 0.01;
  AutoencoderTrainer trainer(m, lex, t);
  for (auto _ : state) benchmark::DoNotOptimize(trainer.run_epoch());
}
BENCHMARK(BM_AutoencoderEpoch)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_RankLevenshtein(benchmark::State& state) {
  const Lexicon lex = synthetic_lexicon(static_cast<std::size_t>(state.range(0)));
  const WordDistance d = make_word_distance(classical_metric("levenshtein"), lex);
  for (auto _ : state) benchmark::DoNotOptimize(true_ranks(d, lex));
}
BENCHMARK(BM_RankLevenshtein)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
