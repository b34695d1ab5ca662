// Acceptance suite: one PASS/FAIL/SKIP line per criterion, nonzero exit on
// any FAIL. INFO lines carry context and never affect the exit code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles/string_oracles.hpp"
#include "wordsim/autoencoder.hpp"
#include "wordsim/context_encoder.hpp"
#include "wordsim/edit_distance.hpp"
#include "wordsim/error.hpp"
#include "wordsim/evaluation.hpp"
#include "wordsim/gram_distance.hpp"
#include "wordsim/io.hpp"
#include "wordsim/network.hpp"

using namespace wordsim;

namespace {

int failures = 0;

struct Outcome {
  enum Kind { pass, fail, skip } kind = fail;
  std::string detail;
};

Outcome verdict(bool ok, std::string detail) { return {ok ? Outcome::pass : Outcome::fail, std::move(detail)}; }

void criterion(int id, const std::string& title, double limit_seconds,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {Outcome::fail, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.kind == Outcome::pass && limit_seconds > 0 && secs >= limit_seconds) {
    o.kind = Outcome::fail;
    o.detail += "; over the time limit";
  }
  const char* tag = o.kind == Outcome::pass ? "PASS" : o.kind == Outcome::skip ? "SKIP" : "FAIL";
  if (o.kind == Outcome::fail) ++failures;
  char t[32];
  std::snprintf(t, sizeof t, "%.2fs", secs);
  std::cout << tag << "  [" << id << "] " << title << " -- " << o.detail << " (" << t << ")" << std::endl;
}

void info(const std::string& text) { std::cout << "INFO  " << text << std::endl; }

std::string fmt(double v, int digits = 2) {
  char b[64];
  std::snprintf(b, sizeof b, "%.*f", digits, v);
  return b;
}

std::string random_ascii(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> ch(32, 126);
  std::string s;
  for (std::size_t k = len(rng); k > 0; --k) s += static_cast<char>(ch(rng));
  return s;
}

// Counts violations of non-negativity, identity (when checked), symmetry and
// the triangle inequality over one triple.
template <typename D>
int axiom_violations(const D& d, const std::string& x, const std::string& y, const std::string& z,
                     bool check_identity) {
  int bad = 0;
  const double xy = d(x, y), yx = d(y, x), xz = d(x, z), yz = d(y, z);
  if (xy < 0 || xz < 0 || yz < 0) ++bad;
  if (d(x, x) != 0) ++bad;
  if (check_identity && (xy == 0) != (x == y)) ++bad;
  if (xy != yx) ++bad;
  if (xz > xy + yz + 1e-12) ++bad;
  return bad;
}

Lexicon parse_pairs(const std::string& tsv) {
  std::istringstream in(tsv);
  return parse_lexicon(in);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

int main() {
  std::cout << "wordsim acceptance suite" << std::endl;

  criterion(1, "DP vs brute-force oracles, {a,b,c}, length <= 5", 60, [] {
    const oracle::EditGraph edit("abc", 5, true);
    const oracle::EditGraph indel("abc", 5, false);
    const auto& words = edit.strings();
    std::size_t pairs = 0, mismatches = 0;
    for (const auto& x : words) {
      for (const auto& y : words) {
        ++pairs;
        if (levenshtein(x, y) != edit.distance(x, y)) ++mismatches;
        if (static_cast<int>(lcs_distance(x, y)) != indel.distance(x, y)) ++mismatches;
        if (static_cast<int>(damerau_levenshtein(x, y)) != oracle::osa_bruteforce(x, y)) ++mismatches;
      }
    }
    return verdict(mismatches == 0, std::to_string(pairs) + " pairs x 3 metrics, " +
                                        std::to_string(mismatches) + " mismatches");
  });

  criterion(2, "metric axioms over 10^4 random triples", 60, [] {
    std::mt19937_64 rng(2024);
    int lev = 0, dam = 0, lcs = 0, qg = 0;
    auto L = [](const std::string& a, const std::string& b) { return levenshtein(a, b); };
    auto D = [](const std::string& a, const std::string& b) {
      return static_cast<double>(damerau_levenshtein(a, b));
    };
    auto C = [](const std::string& a, const std::string& b) { return static_cast<double>(lcs_distance(a, b)); };
    auto Q = [](const std::string& a, const std::string& b) { return static_cast<double>(qgram_distance(a, b, 2)); };
    for (int i = 0; i < 10000; ++i) {
      const std::string x = random_ascii(rng, 12), y = random_ascii(rng, 12), z = random_ascii(rng, 12);
      lev += axiom_violations(L, x, y, z, true);
      dam += axiom_violations(D, x, y, z, true);
      lcs += axiom_violations(C, x, y, z, true);
      qg += axiom_violations(Q, x, y, z, false);
    }
    const bool witness = qgram_distance("aba", "bab", 2) == 0;

    // Restricted Damerau is not a metric; dense small-alphabet triples expose it.
    const auto small = oracle::all_strings("abc", 3);
    std::size_t osa_bad = 0, triples = 0;
    for (const auto& x : small) {
      for (const auto& y : small) {
        for (const auto& z : small) {
          ++triples;
          if (damerau_levenshtein(x, z) > damerau_levenshtein(x, y) + damerau_levenshtein(y, z)) ++osa_bad;
        }
      }
    }
    info("restricted damerau triangle violations over all " + std::to_string(triples) +
         " triples of {a,b,c}^<=3: " + std::to_string(osa_bad) +
         " (witness ca/ac/abc: 3 > 1 + 1)");
    return verdict(lev + dam + lcs + qg == 0 && witness,
                   "violations levenshtein " + std::to_string(lev) + ", damerau " + std::to_string(dam) +
                       ", lcs " + std::to_string(lcs) + ", qgram " + std::to_string(qg) +
                       "; qgram identity witness aba/bab " + (witness ? "stored" : "MISSING"));
  });

  criterion(3, "levenshtein(vector, doctor) = 2", 0, [] {
    const double d = levenshtein("vector", "doctor");
    return verdict(d == 2.0, "got " + fmt(d, 0));
  });

  criterion(4, "gradient checks, autoencoder |A| = 32 depth 7 and context encoder", 120, [] {
    const Lexicon lex = fixtures::toy_lexicon(8);
    double ae_worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const AutoencoderModel m = AutoencoderModel::build(lex, AutoencoderConfig{}, seed);
      std::mt19937_64 rng(seed);
      for (int k = 0; k < 3; ++k) {
        const WordId w = lex.nonstandard_ids()[rng() % lex.nonstandard_ids().size()];
        const double e = gradient_check(m.network(), one_hot(lex, w).dense(),
                                        one_hot(lex, *lex.standard_of(w)).dense(), Loss::cross_entropy);
        ae_worst = std::max(ae_worst, e);
      }
    }
    const auto fx = fixtures::dog_fixture(50);
    const Lexicon clex = parse_pairs(fx.pairs_tsv);
    double ctx_worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ContextModel m = ContextModel::build(clex, ContextConfig{}, seed);
      std::mt19937_64 rng(seed);
      std::vector<WordId> ctx(m.config().window);
      for (auto& w : ctx) w = rng() % 4 == 0 ? kPaddingToken : rng() % clex.size();
      ctx_worst = std::max(ctx_worst, context_gradient_check(m, ctx, rng() % clex.size()));
    }
    return verdict(ae_worst < 1e-4 && ctx_worst < 1e-4,
                   "max relative error autoencoder " + fmt(ae_worst * 1e6, 3) + "e-6, context " +
                       fmt(ctx_worst * 1e6, 3) + "e-6 (limit 1e-4)");
  });

  criterion(5, "softmax sums to 1 +- 1e-9 on 10^4 inputs incl. +-1000", 0, [] {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> logit(-1000.0, 1000.0);
    std::uniform_int_distribution<int> dim(1, 64);
    double worst = 0.0;
    int extremes = 0;
    for (int i = 0; i < 5000; ++i) {
      Eigen::VectorXd z(dim(rng));
      for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = logit(rng);
      if (i % 3 == 0) {
        z[0] = 1000.0;
        z[z.size() - 1] = -1000.0;
        ++extremes;
      }
      if (i % 7 == 0) z.setConstant(i % 2 ? 1000.0 : -1000.0);
      worst = std::max(worst, std::abs(softmax(z).sum() - 1.0));
    }
    // The same through forward passes whose output layer is softmax.
    const std::vector<std::size_t> widths{6, 10, 12};
    const std::vector<Activation> acts{Activation::tanh, Activation::softmax};
    for (int i = 0; i < 5000; ++i) {
      Network net = Network::glorot(widths, acts, rng);
      net.layers()[1].weights *= 500.0;  // saturated tanh -> logits near +-1000 scale
      Eigen::VectorXd x(6);
      for (Eigen::Index j = 0; j < 6; ++j) x[j] = logit(rng);
      worst = std::max(worst, std::abs(forward(net, x).back().sum() - 1.0));
    }
    return verdict(worst <= 1e-9, "10000 inputs (" + std::to_string(extremes) +
                                      " pinned to +-1000), max |sum - 1| = " + fmt(worst * 1e15, 3) + "e-15");
  });

  criterion(6, "toy denoising run: D_a-cosine acc@1 >= 90% for >= 8/10 seeds", 300, [] {
    const Lexicon lex = fixtures::toy_lexicon();
    AutoencoderConfig ac;
    ac.code_size = 8;
    ac.depth = 5;
    int good = 0;
    std::string accs;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      AutoencoderModel m = AutoencoderModel::build(lex, ac, seed);
      TrainConfig t;
      t.batch_size = 16;
      t.learning_rate = 0.05;
      t.epochs = 200;
      t.seed = seed;
      train_autoencoder(m, lex, t);
      const double acc =
          evaluate_accuracy(embedding_distance(m.code_table(lex), VectorMetric::cosine), lex, {1}).at(1);
      good += acc >= 90.0;
      accs += (accs.empty() ? "" : " ") + fmt(acc, 1);
    }
    return verdict(good >= 8, std::to_string(good) + "/10 seeds; acc@1 % = " + accs);
  });

  criterion(7, "toy context run: D_c(dogg,dog) < median standard D_c for >= 8/10 seeds", 300, [] {
    const auto fx = fixtures::dog_fixture(500);
    const Lexicon lex = parse_pairs(fx.pairs_tsv);
    std::istringstream cin_(fx.corpus_txt);
    const Corpus corpus = parse_corpus(cin_, lex);
    int good = 0;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      ContextModel ctx = ContextModel::build(lex, ContextConfig{}, seed);
      AutoencoderConfig ac;
      ac.depth = 5;
      AutoencoderModel ae = AutoencoderModel::build(lex, ac, seed + 1000);
      TrainConfig tc;
      tc.batch_size = 16;
      tc.learning_rate = 0.05;
      tc.seed = seed;
      TrainConfig ta = tc;
      ta.seed = seed + 1000;
      const EmbeddingMatrix u = train_combined(ctx, ae, lex, corpus, tc, ta, CombinedConfig{});
      const auto& s = lex.standard_ids();
      std::vector<double> d;
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) d.push_back(distance_dc(u, s[i], s[j], VectorMetric::cosine));
      }
      const double med = median(d);
      const double dd = distance_dc(u, lex.id_of("dogg"), lex.id_of("dog"), VectorMetric::cosine);
      good += dd < med;
      detail += (detail.empty() ? "" : " ") + fmt(dd, 3) + "/" + fmt(med, 3);
    }
    return verdict(good >= 8, std::to_string(good) + "/10 seeds; D_c/median = " + detail);
  });

  criterion(8, "challenge-dataset classical rows within +-2 points", 600, [] {
    const char* path = std::getenv("WORDSIM_CHALLENGE_PAIRS");
    if (!path || !*path) {
      return Outcome{Outcome::skip, "dataset not available; set WORDSIM_CHALLENGE_PAIRS to a pairs TSV"};
    }
    const Lexicon lex = load_lexicon(path);
    const auto nl = evaluate_accuracy(make_word_distance(classical_metric("normalized_levenshtein"), lex), lex,
                                      {1, 5});
    const auto ed = evaluate_accuracy(make_word_distance(classical_metric("levenshtein"), lex), lex, {1});
    const bool ok = std::abs(nl.at(1) - 63.17) <= 2.0 && std::abs(nl.at(5) - 78.30) <= 2.0 &&
                    std::abs(ed.at(1) - 55.75) <= 2.0;
    return verdict(ok, "normalized levenshtein @1 " + fmt(nl.at(1)) + " (63.17), @5 " + fmt(nl.at(5)) +
                           " (78.30); edit distance @1 " + fmt(ed.at(1)) + " (55.75)");
  });

  info("[9] full-scale learned targets (not gated): D_a-cosine acc@1 83.82%, "
       "D_c-cosine 85.37% / 89.61%; rerun with `wordsim train-ae` / `train-combined` on the "
       "challenge data with --seed 1..10");

  criterion(10, "train-ae twice with the same seed gives byte-identical files", 120, [] {
    const auto dir = std::filesystem::temp_directory_path() / "wordsim_acceptance_det";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::string tsv;
    for (const auto& [v, w] : fixtures::toy_pairs()) tsv += v + "\t" + w + "\n";
    write_file_atomic(dir / "pairs.tsv", tsv);
    std::vector<std::string> files;
    for (const char* name : {"a.json", "b.json"}) {
      const std::string out = (dir / name).string();
      const std::string cmd = shell_quote(WORDSIM_CLI_PATH) + " --seed 7 train-ae --lexicon " +
                              shell_quote((dir / "pairs.tsv").string()) + " --out " + shell_quote(out) +
                              " --code-size 8 --depth 5 --batch 16 --lr 0.05 --epochs 30 --threads 2 > " +
                              shell_quote((dir / "log.txt").string()) + " 2>&1";
      if (std::system(cmd.c_str()) != 0) return verdict(false, "cli failed: " + read_file(dir / "log.txt"));
      files.push_back(read_file(out));
    }
    std::filesystem::remove_all(dir);
    return verdict(files[0] == files[1] && !files[0].empty(),
                   std::to_string(files[0].size()) + " bytes, " + (files[0] == files[1] ? "identical" : "DIFFERENT"));
  });

  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " FAIL" : std::string("acceptance: all gated criteria met"))
            << std::endl;
  return failures ? 1 : 0;
}
