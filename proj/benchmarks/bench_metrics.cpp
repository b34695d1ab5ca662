#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "wordsim/edit_distance.hpp"
#include "wordsim/gram_distance.hpp"

using namespace wordsim;

namespace {

std::vector<std::string> words(std::size_t count, std::size_t len) {
  std::mt19937_64 rng(42);
  std::vector<std::string> out(count);
  for (auto& w : out) {
    for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('a' + rng() % 26);
  }
  return out;
}

template <typename F>
void run_pairs(benchmark::State& state, F f) {
  const auto w = words(256, static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f(w[i % w.size()], w[(i * 7 + 1) % w.size()]));
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

static void BM_Levenshtein(benchmark::State& s) {
  run_pairs(s, [](const std::string& a, const std::string& b) { return levenshtein(a, b); });
}
static void BM_Damerau(benchmark::State& s) {
  run_pairs(s, [](const std::string& a, const std::string& b) { return damerau_levenshtein(a, b); });
}
static void BM_Lcs(benchmark::State& s) {
  run_pairs(s, [](const std::string& a, const std::string& b) { return lcs_distance(a, b); });
}
static void BM_QGram(benchmark::State& s) {
  run_pairs(s, [](const std::string& a, const std::string& b) { return qgram_distance(a, b, 2); });
}
static void BM_KondrakNGram(benchmark::State& s) {
  run_pairs(s, [](const std::string& a, const std::string& b) { return kondrak_ngram_distance(a, b, 2); });
}
static void BM_Dice(benchmark::State& s) {
  run_pairs(s, [](const std::string& a, const std::string& b) { return dice_distance(a, b, 2); });
}

BENCHMARK(BM_Levenshtein)->Arg(6)->Arg(12)->Arg(32);
BENCHMARK(BM_Damerau)->Arg(6)->Arg(12)->Arg(32);
BENCHMARK(BM_Lcs)->Arg(6)->Arg(12)->Arg(32);
BENCHMARK(BM_QGram)->Arg(6)->Arg(12);
BENCHMARK(BM_KondrakNGram)->Arg(6)->Arg(12);
BENCHMARK(BM_Dice)->Arg(6)->Arg(12);
