// Regenerates tests/fixtures/replay: datasets, recorded replies and the expected report.
// Usage: formaltrip_make_replay_fixture <fixture dir>

#include <filesystem>
#include <iostream>

#include "formaltrip/common/hash.hpp"
#include "formaltrip/grammar/dataset.hpp"
#include "formaltrip/grammar/grammar.hpp"
#include "formaltrip/llm/provider.hpp"
#include "formaltrip/store/dataset_io.hpp"
#include "replay_run.hpp"

namespace fs = std::filesystem;
using namespace formaltrip;

namespace {

// Oracle replies with prompt-keyed refusals, flipped verdicts and rambling judge answers.
class NoisyOracle : public llm::Provider {
 public:
  llm::Completion complete(const std::string& prompt) override {
    const auto h = std::stoull(sha256_hex(prompt).substr(0, 12), nullptr, 16);
    const bool compile = prompt.find("[NL DESCRIPTION]") != std::string::npos;
    const bool judge = prompt.find("[Formula 1]") != std::string::npos;
    llm::Completion c;
    if (compile && h % 6 == 0) {
      c.text = "I'm sorry, the description is too ambiguous to write down a formula.";
      return c;
    }
    c = oracle_.complete(prompt);
    if (judge && h % 11 == 0) {
      c.text = "Both formulas are hard to compare without more context.";
    } else if (judge && h % 5 == 0) {
      const bool yes = c.text.find("[Answer] yes") != std::string::npos;
      c.text = yes ? "They differ on some input.\n[Answer] no" : "They look the same.\n[Answer] yes";
    }
    return c;
  }
  std::string model() const override { return "replay-model"; }

 private:
  llm::OracleProvider oracle_{0.45, 11, "replay-model"};
};

void write_dataset(const fs::path& dir, const std::string& id, syntax::Formalism f, std::size_t depth) {
  grammar::GenerationConfig cfg;
  cfg.depth = depth;
  cfg.branching = 40;
  cfg.sample_count = 6;
  cfg.batches = 2;
  cfg.metric = grammar::default_metric(f);
  cfg.seed = 2024;
  grammar::VocabularyConfig vocab;
  if (f == syntax::Formalism::Regex) vocab.alphabet_size = 2;
  store::write_dataset(grammar::generate_dataset(grammar::Grammar::builtin(id), f, vocab, cfg), dir);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: formaltrip_make_replay_fixture <fixture dir>\n";
    return 64;
  }
  const fs::path dir = argv[1];
  fs::remove_all(dir / "datasets");
  fs::remove_all(dir / "expected");
  fs::remove(dir / "replies.jsonl");
  fs::create_directories(dir / "datasets");
  fs::create_directories(dir / "expected");
  write_dataset(dir / "datasets", "prop", syntax::Formalism::Prop, 10);
  write_dataset(dir / "datasets", "fol", syntax::Formalism::Fol, 10);
  write_dataset(dir / "datasets", "regex", syntax::Formalism::Regex, 16);

  llm::RecordingProvider recorder(std::make_unique<NoisyOracle>(), dir / "replies.jsonl");
  const auto outcome = replay::run(dir, recorder);
  store::write_text_file(dir / "expected/summary.json", metrics::summary_json(outcome.report));
  store::write_text_file(dir / "expected/report.txt", metrics::text_table(outcome.report));
  std::cout << outcome.round_trips.size() << " round trips, " << outcome.judges.size()
            << " judge records\n";
  return 0;
}
