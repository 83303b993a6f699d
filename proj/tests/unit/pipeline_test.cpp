#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include "formaltrip/common/rng.hpp"
#include "formaltrip/grammar/dataset.hpp"
#include "formaltrip/grammar/grammar.hpp"
#include "formaltrip/llm/oracle.hpp"
#include "formaltrip/llm/pipeline.hpp"
#include "oracles.hpp"

using namespace formaltrip;
using namespace formaltrip::llm;
using syntax::Formalism;

namespace {

grammar::Dataset small_dataset(const std::string& grammar_id, Formalism f, std::uint64_t seed = 5) {
  grammar::GenerationConfig cfg;
  cfg.depth = 10;
  cfg.branching = 50;
  cfg.sample_count = 3;
  cfg.batches = 1;
  cfg.metric = grammar::default_metric(f);
  cfg.seed = seed;
  grammar::VocabularyConfig vocab;
  if (f == Formalism::Regex) vocab.alphabet_size = 2;
  return grammar::generate_dataset(grammar::Grammar::builtin(grammar_id), f, vocab, cfg);
}

std::vector<grammar::DatasetRecord> flat(const grammar::Dataset& d) {
  std::vector<grammar::DatasetRecord> out;
  for (const auto& b : d.batches) out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Sleeps a prompt-dependent amount so completions finish out of order.
class Jittery : public Provider {
 public:
  Completion complete(const std::string& prompt) override {
    std::this_thread::sleep_for(std::chrono::microseconds(std::hash<std::string>{}(prompt) % 3000));
    return inner_.complete(prompt);
  }
  std::string model() const override { return "jittery"; }

 private:
  OracleProvider inner_{0.0, 0, "oracle"};
};

class Failing : public Provider {
 public:
  Completion complete(const std::string&) override {
    throw ProviderError(ProviderError::Kind::Timeout, "deadline exceeded");
  }
  std::string model() const override { return "failing"; }
};

}  // namespace

TEST(RoundTrip, PerfectOracleIsCompliantAndEquivalent) {
  for (auto [id, f] : {std::pair{"prop", Formalism::Prop}, std::pair{"fol", Formalism::Fol},
                       std::pair{"regex", Formalism::Regex}}) {
    OracleProvider p(0.0, 1, "oracle");
    const auto templates = TemplateSet::bundled(f, 2);
    for (const auto& rec : flat(small_dataset(id, f))) {
      const auto r = round_trip(rec, p, templates);
      EXPECT_TRUE(r.compliant()) << rec.expression.canonical_text;
      EXPECT_TRUE(r.equivalent()) << rec.expression.canonical_text << " vs " << r.parsed.value_or("-");
      EXPECT_EQ(r.phi, rec.expression.canonical_text);
      EXPECT_EQ(r.record_id, rec.id);
      EXPECT_EQ(r.interpret_prompt_id, templates.interpret.id);
      EXPECT_EQ(r.compile_prompt_id, templates.compile.id);
    }
  }
}

TEST(RoundTrip, CorruptingOracleIsNeverEquivalent) {
  OracleProvider p(1.0, 2, "corrupt");
  const auto templates = TemplateSet::bundled(Formalism::Prop, 2);
  for (const auto& rec : flat(small_dataset("prop", Formalism::Prop))) {
    const auto r = round_trip(rec, p, templates);
    EXPECT_TRUE(r.compliant());
    ASSERT_TRUE(r.verdict.has_value());
    EXPECT_EQ(r.verdict->status, verify::Status::NotEquivalent);
  }
}

TEST(RoundTrip, NonCompliantReplyHasNoVerdict) {
  ScriptedReplayProvider p(std::map<std::string, std::string>{}, "m", std::string("Sorry, I cannot help."));
  const auto rec = flat(small_dataset("prop", Formalism::Prop)).front();
  const auto r = round_trip(rec, p, TemplateSet::bundled(Formalism::Prop, 2));
  EXPECT_FALSE(r.compliant());
  EXPECT_TRUE(r.noncompliant_reason.has_value());
  EXPECT_FALSE(r.verdict.has_value());
  EXPECT_FALSE(r.error.has_value());
}

TEST(RoundTrip, ProviderFailureIsRecordedAsError) {
  Failing p;
  const auto rec = flat(small_dataset("prop", Formalism::Prop)).front();
  const auto r = round_trip(rec, p, TemplateSet::bundled(Formalism::Prop, 2));
  ASSERT_TRUE(r.error.has_value());
  EXPECT_NE(r.error->find("deadline exceeded"), std::string::npos);
  EXPECT_FALSE(r.compliant());
}

TEST(RoundTrip, TimingsOnlyWhenRequested) {
  OracleProvider p(0.0, 1, "oracle");
  const auto rec = flat(small_dataset("prop", Formalism::Prop)).front();
  const auto templates = TemplateSet::bundled(Formalism::Prop, 2);
  EXPECT_EQ(round_trip(rec, p, templates).timings, Timings{});
  PipelineOptions o;
  o.record_timings = true;
  EXPECT_GT(round_trip(rec, p, templates, o).timings.interpret_ms, 0.0);
}

TEST(RunRoundTrips, EmitsInInputOrderAndMatchesSequential) {
  const auto records = flat(small_dataset("prop", Formalism::Prop, 9));
  ASSERT_GT(records.size(), 10u);
  const auto templates = TemplateSet::bundled(Formalism::Prop, 2);
  Jittery p;
  PipelineOptions o;
  o.request_width = 4;
  o.verifier_width = 2;
  std::vector<RoundTripRecord> got;
  run_round_trips(records, p, templates, o, [&](RoundTripRecord r) { got.push_back(std::move(r)); });
  ASSERT_EQ(got.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(got[i].record_id, records[i].id);
    EXPECT_EQ(got[i], round_trip(records[i], p, templates));
  }
}

TEST(JudgeAnswer, ParsesLastAnswerAfterMarker) {
  EXPECT_EQ(parse_judge_answer("Thinking... yes maybe.\n[Answer] No."), JudgeAnswer::No);
  EXPECT_EQ(parse_judge_answer("[answer] no wait, YES"), JudgeAnswer::Yes);
  EXPECT_EQ(parse_judge_answer("[Answer] yes\n...\n[Answer] no"), JudgeAnswer::No);
  EXPECT_EQ(parse_judge_answer("yes"), JudgeAnswer::Unparseable);
  EXPECT_EQ(parse_judge_answer("[Answer] perhaps"), JudgeAnswer::Unparseable);
  EXPECT_EQ(parse_judge_answer("[Answer] yesterday"), JudgeAnswer::Unparseable);
}

TEST(Judge, OracleAnswersMatchGroundTruth) {
  OracleProvider p(1.0, 4, "corrupt");
  const auto templates = TemplateSet::bundled(Formalism::Prop, 2);
  std::vector<RoundTripRecord> rts;
  for (const auto& rec : flat(small_dataset("prop", Formalism::Prop))) rts.push_back(round_trip(rec, p, templates));
  auto pairs = balance_pairs(judge_pairs(rts));
  std::size_t pos = 0, neg = 0;
  for (const auto& pr : pairs) (pr.ground_truth == verify::Status::Equivalent ? pos : neg)++;
  EXPECT_EQ(pos, neg);
  OracleProvider judge_model(0.0, 0, "oracle");
  std::vector<JudgeRecord> out;
  run_judges(pairs, judge_model, templates.judge, 3, [&](JudgeRecord r) { out.push_back(std::move(r)); });
  ASSERT_EQ(out.size(), pairs.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].pair, pairs[i]);
    EXPECT_EQ(out[i].answer, pairs[i].ground_truth == verify::Status::Equivalent ? JudgeAnswer::Yes : JudgeAnswer::No);
  }
}

TEST(Judge, PairsSkipUndecidedAndNonCompliant) {
  RoundTripRecord a, b, c;
  a.record_id = "a";
  a.phi = "p1";
  a.parsed = "p1";
  a.verdict = verify::EquivalenceVerdict{verify::Status::Equivalent, {}, ""};
  b.record_id = "b";
  b.phi = "p1";
  c.record_id = "c";
  c.phi = "p1";
  c.parsed = "p2";
  c.verdict = verify::EquivalenceVerdict{verify::Status::Unknown, {}, "budget"};
  const std::vector<RoundTripRecord> rts = {a, b, c};
  const auto pairs = judge_pairs(rts);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].id, "a");
}

TEST(EquivalentVariant, RewritesPreserveMeaningProperty) {
  Rng rng(83);
  for (int i = 0; i < 200; ++i) {
    for (const auto& e : {syntax::make_expression(gen::prop(rng, 4, 4)),
                          syntax::make_expression(gen::regex(rng, "01", 4)),
                          syntax::parse_expression(gen::fol_text(rng, 3), Formalism::Fol)}) {
      const auto v = equivalent_variant(e);
      const bool star_free = e.formalism == Formalism::Regex && e.canonical_text.find('*') == std::string::npos;
      EXPECT_EQ(v.canonical_text == e.canonical_text, star_free) << e.canonical_text;
      EXPECT_EQ(verify::verify(e, v).status, verify::Status::Equivalent) << e.canonical_text;
    }
  }
}

TEST(EquivalentVariant, Simplifications) {
  EXPECT_EQ(equivalent_variant(syntax::parse_expression("¬¬p1", Formalism::Prop)).canonical_text, "p1");
  EXPECT_EQ(equivalent_variant(syntax::parse_expression("(1*)*", Formalism::Regex)).canonical_text, "1*");
  EXPECT_EQ(equivalent_variant(syntax::parse_expression("p1", Formalism::Prop)).canonical_text, "¬¬p1");
}
