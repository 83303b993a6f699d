#include <benchmark/benchmark.h>

#include "formaltrip/grammar/dataset.hpp"

using namespace formaltrip;

static void BM_GenerateDataset(benchmark::State& state, const char* grammar_id) {
  const auto f = grammar::builtin_formalism(grammar_id);
  const auto& g = grammar::Grammar::builtin(grammar_id);
  grammar::GenerationConfig cfg;
  cfg.depth = static_cast<std::size_t>(state.range(0));
  cfg.branching = 50;
  cfg.sample_count = 10;
  cfg.batches = 1;
  cfg.metric = grammar::default_metric(f);
  grammar::VocabularyConfig vocab;
  if (f == syntax::Formalism::Regex) vocab.alphabet_size = 2;
  std::size_t records = 0;
  for (auto _ : state) {
    const auto d = grammar::generate_dataset(g, f, vocab, cfg);
    records += d.batches.front().size();
    ++cfg.seed;
  }
  state.counters["records"] = benchmark::Counter(static_cast<double>(records), benchmark::Counter::kAvgIterations);
}
BENCHMARK_CAPTURE(BM_GenerateDataset, prop, "prop")->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GenerateDataset, fol, "fol")->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GenerateDataset, regex, "regex")->Arg(16)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GenerateDataset, ksat3, "ksat3")->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
