#include <benchmark/benchmark.h>

#include <vector>

#include "formaltrip/common/rng.hpp"
#include "formaltrip/grammar/dataset.hpp"
#include "formaltrip/llm/oracle.hpp"
#include "formaltrip/llm/pipeline.hpp"
#include "formaltrip/verify/verify.hpp"

using namespace formaltrip;
using syntax::Formalism;

namespace {

struct Pair {
  syntax::FormalExpression a, b;
};

// half equivalent rewrites, half corruptions, drawn from generated records
std::vector<Pair> pairs(const char* grammar_id, std::size_t depth) {
  const auto f = grammar::builtin_formalism(grammar_id);
  grammar::GenerationConfig cfg;
  cfg.depth = depth;
  cfg.branching = 40;
  cfg.sample_count = 8;
  cfg.batches = 1;
  cfg.metric = grammar::default_metric(f);
  cfg.seed = 17;
  grammar::VocabularyConfig vocab;
  if (f == Formalism::Regex) vocab.alphabet_size = 2;
  const auto d = grammar::generate_dataset(grammar::Grammar::builtin(grammar_id), f, vocab, cfg);
  Rng rng(3);
  std::vector<Pair> out;
  for (const auto& r : d.batches.front()) {
    const bool same = out.size() % 2 == 0;
    out.push_back({r.expression, same ? llm::equivalent_variant(r.expression) : llm::corrupt(r.expression, rng)});
  }
  return out;
}

void run(benchmark::State& state, const std::vector<Pair>& ps, const verify::VerifierOptions& o) {
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& p = ps[i++ % ps.size()];
    benchmark::DoNotOptimize(verify::verify(p.a, p.b, o));
  }
  state.counters["pairs"] = static_cast<double>(ps.size());
}

}  // namespace

static void BM_PropVerify(benchmark::State& state) {
  static const auto ps = pairs("prop", 12);
  run(state, ps, {});
}
BENCHMARK(BM_PropVerify);

static void BM_PropVerifySatOnly(benchmark::State& state) {
  static const auto ps = pairs("prop", 12);
  verify::VerifierOptions o;
  o.prop.exhaustive_limit = 0;
  run(state, ps, o);
}
BENCHMARK(BM_PropVerifySatOnly);

static void BM_FolVerify(benchmark::State& state) {
  static const auto ps = pairs("fol", 10);
  verify::VerifierOptions o;
  o.fol.budget.max_seconds = 2.0;
  run(state, ps, o);
}
BENCHMARK(BM_FolVerify)->Unit(benchmark::kMillisecond);

static void BM_RegexVerify(benchmark::State& state) {
  static const auto ps = pairs("regex", 24);
  verify::VerifierOptions o;
  o.alphabet = syntax::Alphabet::digits(2);
  run(state, ps, o);
}
BENCHMARK(BM_RegexVerify)->Unit(benchmark::kMicrosecond);

static void BM_CanonicalDfa(benchmark::State& state) {
  static const auto ps = pairs("regex", 24);
  const auto sigma = syntax::Alphabet::digits(2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify::canonical_dfa(ps[i++ % ps.size()].a.regex(), sigma));
  }
}
BENCHMARK(BM_CanonicalDfa)->Unit(benchmark::kMicrosecond);
