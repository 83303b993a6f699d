#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formaltrip/grammar/dataset.hpp"
#include "formaltrip/llm/prompt.hpp"
#include "formaltrip/llm/provider.hpp"
#include "formaltrip/verify/verdict.hpp"
#include "formaltrip/verify/verify.hpp"

namespace formaltrip::llm {

struct Timings {
  double interpret_ms = 0.0;
  double compile_ms = 0.0;
  double verify_ms = 0.0;

  bool operator==(const Timings&) const = default;
};

struct TokenCounts {
  std::optional<long> prompt_tokens;
  std::optional<long> completion_tokens;

  bool operator==(const TokenCounts&) const = default;
};

struct RoundTripRecord {
  std::string record_id;
  std::string model;
  syntax::Formalism formalism = syntax::Formalism::Prop;
  std::size_t batch_index = 1;
  syntax::Metric category_metric = syntax::Metric::OperatorTotal;
  double category_value = 0.0;
  std::size_t cfg_depth = 0;
  std::string alphabet;  // regex symbol set of the dataset
  std::string phi;       // canonical text of the dataset expression
  std::string interpret_prompt_id;
  std::string compile_prompt_id;
  std::string interpretation;
  std::string compile_reply;
  std::optional<std::string> parsed;  // canonical text of φ′
  std::optional<std::string> noncompliant_reason;
  std::optional<verify::EquivalenceVerdict> verdict;
  /// Provider failure; the sample is excluded from the compliance denominator.
  std::optional<std::string> error;
  Timings timings;
  TokenCounts tokens;

  bool compliant() const { return parsed.has_value(); }
  bool equivalent() const { return verdict && verdict->status == verify::Status::Equivalent; }

  bool operator==(const RoundTripRecord&) const = default;
};

struct PipelineOptions {
  verify::VerifierOptions verifier;
  std::size_t request_width = 4;
  std::size_t verifier_width = 2;
  bool record_timings = false;
};

/// Interpretation and compilation as two independent single-turn completions, followed by
/// extraction and verification of the compile reply.
RoundTripRecord round_trip(const grammar::DatasetRecord& record, Provider& provider,
                           const TemplateSet& templates, const PipelineOptions& options = {});

/// Runs round_trip over `records` with `request_width` concurrent provider calls and a
/// separate verifier pool. `emit` receives the results in input order.
void run_round_trips(std::span<const grammar::DatasetRecord> records, Provider& provider,
                     const TemplateSet& templates, const PipelineOptions& options,
                     const std::function<void(RoundTripRecord)>& emit);

enum class JudgeAnswer { Yes, No, Unparseable };

std::string_view to_string(JudgeAnswer a);
JudgeAnswer judge_answer_from_string(std::string_view s);

/// Last case-insensitive yes/no after the final "[Answer]" marker.
JudgeAnswer parse_judge_answer(std::string_view reply);

struct JudgePair {
  std::string id;
  syntax::Formalism formalism = syntax::Formalism::Prop;
  std::size_t batch_index = 1;
  double category_value = 0.0;
  std::string phi;
  std::string phi_prime;
  verify::Status ground_truth = verify::Status::Unknown;
  std::string alphabet;

  bool operator==(const JudgePair&) const = default;
};

struct JudgeRecord {
  JudgePair pair;
  std::string model;
  std::string prompt_id;
  JudgeAnswer answer = JudgeAnswer::Unparseable;
  std::string reply;
  std::optional<std::string> error;

  bool operator==(const JudgeRecord&) const = default;
};

JudgeRecord judge(const JudgePair& pair, Provider& provider, const PromptTemplate& t);

void run_judges(std::span<const JudgePair> pairs, Provider& provider, const PromptTemplate& t,
                std::size_t width, const std::function<void(JudgeRecord)>& emit);

/// Pairs (φ, φ′) of the compliant records whose verdict is decided.
std::vector<JudgePair> judge_pairs(std::span<const RoundTripRecord> records);

/// Adds positive pairs (φ, φ″) with φ″ a verifier-confirmed, textually different
/// simplification or expansion of φ until positives match negatives.
std::vector<JudgePair> balance_pairs(std::vector<JudgePair> pairs,
                                     const verify::VerifierOptions& options = {});

/// Structural rewrite of φ that preserves meaning: ¬¬ removal and star-of-star collapse
/// when applicable, otherwise a double negation (logic) or X* → X*X* (regex). A star-free
/// regex denotes a single word with one canonical spelling and comes back unchanged.
syntax::FormalExpression equivalent_variant(const syntax::FormalExpression& e);

}  // namespace formaltrip::llm
