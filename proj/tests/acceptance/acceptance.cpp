// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero on any FAIL.
// Usage: formaltrip_acceptance --fixtures <replay fixture dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fol_suite.hpp"
#include "formaltrip/common/rng.hpp"
#include "formaltrip/grammar/dataset.hpp"
#include "formaltrip/grammar/derivation.hpp"
#include "formaltrip/grammar/grammar.hpp"
#include "formaltrip/grammar/recognize.hpp"
#include "formaltrip/llm/oracle.hpp"
#include "formaltrip/llm/pipeline.hpp"
#include "formaltrip/metrics/metrics.hpp"
#include "formaltrip/metrics/report.hpp"
#include "formaltrip/store/dataset_io.hpp"
#include "formaltrip/verify/fol.hpp"
#include "formaltrip/verify/prop.hpp"
#include "formaltrip/verify/regex.hpp"
#include "oracles.hpp"
#include "replay_run.hpp"

namespace fs = std::filesystem;
using namespace formaltrip;
using syntax::Formalism;
using verify::Status;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the first few failure messages of a criterion.
struct Check {
  std::vector<std::string> failures;
  std::size_t count = 0;

  void fail(const std::string& message) {
    ++count;
    if (failures.size() < 5) failures.push_back(message);
  }
  void expect(bool ok, const std::string& message) {
    if (!ok) fail(message);
  }
  bool ok() const { return count == 0; }
};

struct Criterion {
  int number;
  std::string title;
  std::function<std::string(Check&)> body;  // returns a short detail string
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

std::string criterion1(Check& check) {
  Rng rng(1001);
  std::size_t equivalent = 0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 1000; ++i) {
    const auto f = gen::prop(rng, 6, 5);
    syntax::PropFormula g;
    switch (rng.uniform(3)) {
      case 0: g = gen::prop(rng, 6, 5); break;
      case 1: g = llm::equivalent_variant(syntax::make_expression(f)).prop(); break;
      default: g = llm::corrupt(syntax::make_expression(f), rng).prop(); break;
    }
    auto vars = syntax::prop_variables(f);
    for (const auto& x : syntax::prop_variables(g)) vars.push_back(x);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    check.expect(vars.size() <= 6, std::to_string(vars.size()) + " variables in " + syntax::print_prop(g));
    const auto v = verify::equivalent_prop(f, g);
    const bool expected = oracle::truth_table_equivalent(f, g);
    check.expect((v.status == Status::Equivalent) == expected && v.status != Status::Unknown,
                 "mismatch on " + syntax::print_prop(f) + " vs " + syntax::print_prop(g));
    if (v.status == Status::NotEquivalent) {
      const auto& a = std::get<verify::Assignment>(v.witness);
      check.expect(oracle::truth_value(f, a) != oracle::truth_value(g, a), "witness does not separate");
    }
    equivalent += expected;
  }
  const double s = seconds_since(t0);
  check.expect(s < 10.0, "took " + fmt(s) + " s");
  return "1000 pairs, " + std::to_string(equivalent) + " equivalent, " + fmt(s) + " s";
}

std::string criterion2(Check& check) {
  auto prop = [](std::string_view s) { return syntax::parse_prop(s); };
  check.expect(verify::equivalent_prop(prop("¬(p1 ∧ p2)"), prop("¬p1 ∨ ¬p2")).status == Status::Equivalent,
               "De Morgan not equivalent");
  check.expect(verify::equivalent_prop(prop("p1 ∧ p1"), prop("p1")).status == Status::Equivalent,
               "idempotence not equivalent");
  const auto f = prop("(¬p11 ∧ ¬p8)"), g = prop("¬(p11 ∧ p8)");
  const auto v = verify::equivalent_prop(f, g);
  if (v.status != Status::NotEquivalent) {
    check.fail("(¬p11 ∧ ¬p8) vs ¬(p11 ∧ p8) not NotEquivalent");
    return "";
  }
  const auto& a = std::get<verify::Assignment>(v.witness);
  check.expect(oracle::truth_value(f, a) != oracle::truth_value(g, a), "witness does not separate");
  return "witness " + verify::describe(v.witness);
}

std::string criterion3(Check& check) {
  Rng rng(3003);
  const auto sigma = syntax::Alphabet::digits(2);
  double worst = 0.0;
  std::size_t equivalent = 0;
  for (int i = 0; i < 500; ++i) {
    const auto base = gen::regex(rng, "01", 8);
    syntax::RegexAst a = base, b;
    switch (rng.uniform(3)) {
      case 0: b = gen::regex(rng, "01", 8); break;
      case 1:
        a = syntax::RegexAst::star(base);
        b = syntax::RegexAst::star(syntax::RegexAst::star(base));
        break;
      default: b = llm::corrupt(syntax::make_expression(base), rng).regex(); break;
    }
    const auto t0 = Clock::now();
    const auto v = verify::equivalent_regex(a, b, sigma);
    const double ms = seconds_since(t0) * 1000.0;
    worst = std::max(worst, ms);
    const auto diff = oracle::symmetric_difference_word(a, b, "01");
    const std::string pair = syntax::print_regex(a) + " vs " + syntax::print_regex(b);
    check.expect((v.status == Status::Equivalent) == !diff.has_value(), "mismatch on " + pair);
    check.expect(ms < 100.0, pair + " took " + fmt(ms) + " ms");
    if (v.status == Status::NotEquivalent) {
      const auto& w = std::get<std::string>(v.witness);
      check.expect(oracle::derivative_matches(a, w) != oracle::derivative_matches(b, w),
                   "witness does not separate " + pair);
    }
    equivalent += !diff.has_value();
  }
  return "500 pairs, " + std::to_string(equivalent) + " equivalent, slowest " + fmt(worst) + " ms";
}

std::string criterion4(Check& check) {
  Rng rng(4004);
  const auto sigma = syntax::Alphabet::digits(2);
  std::size_t largest = 0;
  for (int i = 0; i < 200; ++i) {
    const auto r = gen::regex(rng, "01", 7);
    const auto canonical = verify::canonical_dfa(r, sigma);
    const auto expected = oracle::table_filling_state_count(verify::determinize(verify::to_nfa(r, "01")));
    check.expect(canonical.size() == expected, syntax::print_regex(r) + ": " + std::to_string(canonical.size()) +
                                                   " states, table filling " + std::to_string(expected));
    largest = std::max(largest, canonical.size());
  }
  return "200 regexes, up to " + std::to_string(largest) + " states";
}

std::string criterion5(Check& check) {
  verify::FolOptions options;
  options.budget.max_seconds = 5.0;
  options.budget.max_model_domain = 3;
  double worst = 0.0;
  std::size_t unknown = 0;
  for (const auto& c : suite::fol_cases()) {
    const auto f = syntax::parse_fol(c.lhs), g = syntax::parse_fol(c.rhs);
    const auto t0 = Clock::now();
    const auto v = verify::equivalent_fol(f, g, options);
    const double s = seconds_since(t0);
    worst = std::max(worst, s);
    const std::string pair = c.lhs + " vs " + c.rhs;
    unknown += v.status == Status::Unknown;
    check.expect(s < 5.0, pair + " took " + fmt(s) + " s");
    check.expect(v.status == (c.equivalent ? Status::Equivalent : Status::NotEquivalent),
                 pair + ": " + std::string(verify::to_string(v.status)));
    if (v.status == Status::NotEquivalent) {
      const auto& m = std::get<verify::FiniteModel>(v.witness);
      check.expect(m.domain_size <= 3, pair + ": domain " + std::to_string(m.domain_size));
      const auto cf = verify::universal_closure(f), cg = verify::universal_closure(g);
      check.expect(oracle::holds(cf, m) != oracle::holds(cg, m), pair + ": countermodel does not separate");
    }
  }
  check.expect(unknown == 0, std::to_string(unknown) + " unknown verdicts");
  return std::to_string(suite::fol_cases().size()) + " pairs, slowest " + fmt(worst) + " s";
}

double leaf_metric_by_counting(const grammar::Grammar& g, const grammar::DerivationTree& tree, std::size_t i,
                               syntax::Metric m) {
  if (m == syntax::Metric::CfgDepth) {
    return static_cast<double>(grammar::derivation_of(tree, tree.leaves[i]).size());
  }
  const std::string text = g.render(tree.leaf(i).form);
  double n = 0;
  for (const char* glyph : {"∧", "∨", "¬"}) {
    for (auto pos = text.find(glyph); pos != std::string::npos; pos = text.find(glyph, pos + 1)) ++n;
  }
  return n;
}

std::string criterion6(Check& check) {
  std::size_t total = 0, full = 0, short_categories = 0;
  for (const auto& [id, f] : {std::pair{"prop", Formalism::Prop}, std::pair{"fol", Formalism::Fol},
                              std::pair{"regex", Formalism::Regex}, std::pair{"ksat3", Formalism::Prop}}) {
    const auto& g = grammar::Grammar::builtin(id);
    grammar::GenerationConfig cfg;
    cfg.depth = 10;
    cfg.branching = 50;
    cfg.sample_count = 10;
    cfg.batches = 2;
    cfg.metric = grammar::default_metric(f);
    cfg.seed = 6006;
    grammar::VocabularyConfig vocab;
    if (f == Formalism::Regex) vocab.alphabet_size = 2;

    const fs::path root = fs::temp_directory_path() / ("formaltrip-acceptance-" + std::string(id));
    fs::remove_all(root);
    const auto a = grammar::generate_dataset(g, f, vocab, cfg);
    const auto b = grammar::generate_dataset(g, f, vocab, cfg);
    store::write_dataset(a, root / "a");
    store::write_dataset(b, root / "b");
    for (const auto& e : fs::directory_iterator(root / "a")) {
      const auto name = e.path().filename();
      check.expect(store::read_text_file(e.path()) == store::read_text_file(root / "b" / name),
                   std::string(id) + ": " + name.string() + " differs between runs");
    }

    const auto back = store::read_dataset(root / "a" / store::manifest_file_name(id, cfg.metric));
    check.expect(back == a, std::string(id) + ": dataset does not read back");
    for (std::size_t k = 0; k < a.batches.size(); ++k) {
      // regrow the walk and count the candidates per category independently
      Rng walk(a.summaries[k].seed);
      const auto tree = grammar::grow_tree(g, cfg, walk);
      std::map<double, std::size_t> available, taken;
      for (std::size_t i = 0; i < tree.leaves.size(); ++i) ++available[leaf_metric_by_counting(g, tree, i, cfg.metric)];
      for (const auto& r : a.batches[k]) {
        ++taken[r.category_value];
        ++total;
        const auto reparsed = syntax::parse_expression(r.expression.canonical_text, f,
                                                       syntax::ParseOptions{r.vocabulary.alphabet});
        check.expect(reparsed == r.expression, std::string(id) + ": " + r.id + " does not reparse");
        check.expect(grammar::recognize(g, r.cfg_expression), std::string(id) + ": " + r.id + " not in grammar");
      }
      for (const auto& [value, n] : available) {
        const std::size_t want = std::min<std::size_t>(n, cfg.sample_count);
        check.expect(taken[value] == want, std::string(id) + " batch " + std::to_string(k + 1) + " value " +
                                               fmt(value, 1) + ": " + std::to_string(taken[value]) + " of " +
                                               std::to_string(want));
        (n >= cfg.sample_count ? full : short_categories)++;
      }
      for (const auto& [value, n] : taken) {
        check.expect(available.count(value) > 0, std::string(id) + ": value " + fmt(value, 1) + " has no leaves");
      }
    }
    fs::remove_all(root);
  }
  return std::to_string(total) + " records, " + std::to_string(full) + " attainable categories at 10, " +
         std::to_string(short_categories) + " with fewer candidates";
}

std::vector<grammar::DatasetRecord> first_records(const std::string& id, Formalism f, std::size_t n) {
  grammar::GenerationConfig cfg;
  cfg.depth = f == Formalism::Regex ? 40 : 20;
  cfg.branching = 100;
  cfg.sample_count = 50;
  cfg.batches = 6;
  cfg.metric = grammar::default_metric(f);
  cfg.seed = 7007;
  grammar::VocabularyConfig vocab;
  if (f == Formalism::Regex) vocab.alphabet_size = 2;
  const auto d = grammar::generate_dataset(grammar::Grammar::builtin(id), f, vocab, cfg);
  std::vector<grammar::DatasetRecord> out;
  for (const auto& b : d.batches) {
    for (const auto& r : b) {
      if (out.size() < n) out.push_back(r);
    }
  }
  return out;
}

std::vector<llm::RoundTripRecord> run_all(const std::vector<grammar::DatasetRecord>& records,
                                          llm::Provider& p, Formalism f) {
  std::vector<llm::RoundTripRecord> out;
  llm::run_round_trips(records, p, llm::TemplateSet::bundled(f, 2), {},
                       [&](llm::RoundTripRecord r) { out.push_back(std::move(r)); });
  return out;
}

std::string criterion7(Check& check) {
  std::ostringstream detail;
  for (const auto& [id, f] : {std::pair{"prop", Formalism::Prop}, std::pair{"fol", Formalism::Fol},
                              std::pair{"regex", Formalism::Regex}}) {
    const auto records = first_records(id, f, 1000);
    check.expect(records.size() == 1000, std::string(id) + ": only " + std::to_string(records.size()) + " samples");
    llm::OracleProvider perfect(0.0, 1, "perfect");
    const auto rts = run_all(records, perfect, f);
    const auto c = metrics::compliance(rts);
    const auto a = metrics::accuracy(rts);
    check.expect(c.value == 1.0, std::string(id) + ": compliance " + fmt(c.value, 4));
    check.expect(a.value == 1.0, std::string(id) + ": accuracy " + fmt(a.value, 4));
    detail << id << " " << fmt(c.value, 1) << "/" << fmt(a.value, 1) << ", ";
  }

  // every formula with exactly one binary connective over p1..p6, literals optionally negated
  std::vector<grammar::DatasetRecord> single;
  for (const char* op : {" ∧ ", " ∨ "}) {
    for (int i = 1; i <= 6; ++i) {
      for (int j = 1; j <= 6; ++j) {
        for (int neg = 0; neg < 4; ++neg) {
          const std::string text = std::string(neg & 1 ? "¬" : "") + "p" + std::to_string(i) + op +
                                   (neg & 2 ? "¬" : "") + "p" + std::to_string(j);
          grammar::DatasetRecord r;
          r.id = "single" + std::to_string(single.size());
          r.expression = syntax::parse_expression(text, Formalism::Prop);
          single.push_back(std::move(r));
        }
      }
    }
  }
  llm::OracleProvider corrupting(1.0, 2, "corrupting");
  const auto rts = run_all(single, corrupting, Formalism::Prop);
  const auto a = metrics::accuracy(rts);
  check.expect(a.value == 0.0, "corrupting oracle accuracy " + fmt(a.value, 4));
  detail << "corrupting accuracy " << fmt(a.value, 1) << " over " << single.size();
  return detail.str();
}

std::string criterion8(Check& check, const fs::path& fixtures) {
  if (!fs::exists(fixtures / "replies.jsonl")) {
    check.fail("no fixture at " + fixtures.string());
    return "";
  }
  llm::ScriptedReplayProvider replay(fixtures / "replies.jsonl", "replay-model");
  const auto outcome = replay::run(fixtures, replay);
  const auto& rts = outcome.round_trips;
  std::size_t compliant = 0, equivalent = 0;
  for (const auto& r : rts) {
    compliant += r.compliant();
    equivalent += r.equivalent();
    check.expect(!r.error.has_value(), r.record_id + ": " + r.error.value_or(""));
  }
  check.expect(rts.size() >= 200, "only " + std::to_string(rts.size()) + " records");
  check.expect(compliant > 0 && compliant < rts.size(), "fixture lacks compliant or non-compliant records");
  check.expect(equivalent > 0 && equivalent < compliant, "fixture lacks equivalent or inequivalent records");
  const auto summary = metrics::summary_json(outcome.report);
  const auto table = metrics::text_table(outcome.report);
  check.expect(summary == store::read_text_file(fixtures / "expected/summary.json"), "summary.json differs");
  check.expect(table == store::read_text_file(fixtures / "expected/report.txt"), "report.txt differs");
  const auto& j = *outcome.report.judge;
  return std::to_string(rts.size()) + " records (" + std::to_string(rts.size() - compliant) + " non-compliant, " +
         std::to_string(compliant - equivalent) + " inequivalent), " + std::to_string(outcome.judges.size()) +
         " judge pairs, f1 " + fmt(j.f1.value, 4);
}

std::string criterion9(Check& check) {
  const double p = metrics::pass_at_k(5, 2, 3);
  check.expect(std::abs(p - 0.9) < 1e-12, "pass_at_k(5, 2, 3) = " + fmt(p, 12));
  Rng rng(9009);
  for (int draw = 0; draw < 1000; ++draw) {
    const std::size_t n = 1 + rng.uniform(60);
    const std::size_t c = rng.uniform(n + 1);
    for (std::size_t k = 1; k < n; ++k) {
      const double lo = metrics::pass_at_k(n, c, k), hi = metrics::pass_at_k(n, c, k + 1);
      check.expect(lo <= hi + 1e-12 && lo >= 0.0 && hi <= 1.0,
                   "not monotone at n=" + std::to_string(n) + " c=" + std::to_string(c) + " k=" + std::to_string(k));
    }
  }
  return "pass@3 = " + fmt(p, 4) + ", 1000 draws monotone";
}

std::string criterion10(Check& check) {
  // start -0-> accept, start -1-> dead, accept -0,1-> dead, dead -0,1-> dead
  verify::Dfa hand;
  hand.alphabet = "01";
  hand.start = 0;
  hand.delta = {{1, 2}, {2, 2}, {2, 2}};
  hand.accepting = {false, true, false};
  const auto d = verify::canonical_dfa(syntax::parse_regex("0", syntax::Alphabet::digits(2)),
                                       syntax::Alphabet::digits(2));
  check.expect(d == hand, "canonical DFA differs from the hand construction");
  const auto m = verify::dfa_metrics(d);
  check.expect(m.nodes == 3, "|V| = " + std::to_string(m.nodes));
  check.expect(m.edges == 4, "|E| = " + std::to_string(m.edges));
  check.expect(m.density == 0.7, "density " + fmt(m.density, 4));
  return "|V| " + std::to_string(m.nodes) + ", |E| " + std::to_string(m.edges) + ", density " + fmt(m.density, 1);
}

}  // namespace

int main(int argc, char** argv) {
  fs::path fixtures = fs::path("tests") / "fixtures" / "replay";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--fixtures" && i + 1 < argc) {
      fixtures = argv[++i];
    } else {
      std::cerr << "usage: formaltrip_acceptance [--fixtures <dir>]\n";
      return 64;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "propositional verdicts match truth tables", criterion1},
      {2, "propositional identities", criterion2},
      {3, "regex verdicts match derivative product search", criterion3},
      {4, "canonical DFA sizes match table filling", criterion4},
      {5, "first-order suite", criterion5},
      {6, "generator determinism and balance", criterion6},
      {7, "oracle harness validation", criterion7},
      {8, "replay reproducibility", [&](Check& c) { return criterion8(c, fixtures); }},
      {9, "pass@k", criterion9},
      {10, "DFA density", criterion10},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Check check;
    std::string detail;
    try {
      detail = c.body(check);
    } catch (const std::exception& e) {
      check.fail(std::string("exception: ") + e.what());
    }
    std::cout << (check.ok() ? "PASS" : "FAIL") << " " << c.number << " " << c.title;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    for (const auto& f : check.failures) std::cout << "    " << f << "\n";
    if (check.count > check.failures.size()) {
      std::cout << "    ... " << check.count - check.failures.size() << " more\n";
    }
    failed += !check.ok();
  }
  return failed == 0 ? 0 : 1;
}
