#include "formaltrip/llm/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <exception>
#include <regex>

#include "formaltrip/common/thread_pool.hpp"
#include "formaltrip/syntax/extract.hpp"

namespace formaltrip::llm {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void add_tokens(TokenCounts& t, const Completion& c) {
  if (c.prompt_tokens) t.prompt_tokens = t.prompt_tokens.value_or(0) + *c.prompt_tokens;
  if (c.completion_tokens) {
    t.completion_tokens = t.completion_tokens.value_or(0) + *c.completion_tokens;
  }
}

RoundTripRecord start_record(const grammar::DatasetRecord& record, const Provider& provider,
                             const TemplateSet& templates) {
  RoundTripRecord out;
  out.record_id = record.id;
  out.model = provider.model();
  out.formalism = record.formalism;
  out.batch_index = record.batch_index;
  out.category_metric = record.category_metric;
  out.category_value = record.category_value;
  out.cfg_depth = record.cfg_depth;
  if (record.formalism == syntax::Formalism::Regex) {
    out.alphabet = record.vocabulary.alphabet.symbols();
  }
  out.phi = record.expression.canonical_text;
  out.interpret_prompt_id = templates.interpret.id;
  out.compile_prompt_id = templates.compile.id;
  return out;
}

// Both completions; each request carries only its own prompt.
void converse(const grammar::DatasetRecord& record, Provider& provider,
              const TemplateSet& templates, bool timings, RoundTripRecord& out) {
  try {
    auto t0 = Clock::now();
    const Completion interp =
        provider.complete(render_prompt(templates.interpret, interpret_context(record.expression)));
    if (timings) out.timings.interpret_ms = ms_since(t0);
    add_tokens(out.tokens, interp);
    out.interpretation = interp.text;

    t0 = Clock::now();
    const Completion comp =
        provider.complete(render_prompt(templates.compile, compile_context(interp.text)));
    if (timings) out.timings.compile_ms = ms_since(t0);
    add_tokens(out.tokens, comp);
    out.compile_reply = comp.text;
  } catch (const ProviderError& e) {
    out.error = std::string(to_string(e.kind())) + ": " + e.what();
  }
}

void assess(const grammar::DatasetRecord& record, const PipelineOptions& options,
            RoundTripRecord& out) {
  if (out.error) return;
  syntax::ParseOptions parse;
  verify::VerifierOptions vopts = options.verifier;
  if (record.formalism == syntax::Formalism::Regex) {
    parse.alphabet = record.vocabulary.alphabet;
    vopts.alphabet = record.vocabulary.alphabet;
  }
  const auto extracted = syntax::extract_formal(out.compile_reply, record.formalism, parse);
  if (const auto* nc = std::get_if<syntax::NonCompliant>(&extracted)) {
    out.noncompliant_reason = nc->reason;
    return;
  }
  const auto& phi_prime = std::get<syntax::FormalExpression>(extracted);
  out.parsed = phi_prime.canonical_text;
  const auto t0 = Clock::now();
  try {
    out.verdict = verify::verify(record.expression, phi_prime, vopts);
  } catch (const Error& e) {
    out.verdict = verify::EquivalenceVerdict{verify::Status::Unknown, {},
                                             std::string("verifier error: ") + e.what()};
  }
  if (options.record_timings) out.timings.verify_ms = ms_since(t0);
}

}  // namespace

RoundTripRecord round_trip(const grammar::DatasetRecord& record, Provider& provider,
                           const TemplateSet& templates, const PipelineOptions& options) {
  RoundTripRecord out = start_record(record, provider, templates);
  converse(record, provider, templates, options.record_timings, out);
  assess(record, options, out);
  return out;
}

void run_round_trips(std::span<const grammar::DatasetRecord> records, Provider& provider,
                     const TemplateSet& templates, const PipelineOptions& options,
                     const std::function<void(RoundTripRecord)>& emit) {
  OrderedEmitter<RoundTripRecord> ordered(emit);
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto guard = [&](auto&& body) {
    try {
      body();
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  {
    ThreadPool verifiers(std::max<std::size_t>(1, options.verifier_width));
    ThreadPool requests(std::max<std::size_t>(1, options.request_width));
    for (std::size_t i = 0; i < records.size(); ++i) {
      requests.submit([&, i] {
        guard([&] {
          auto out = std::make_shared<RoundTripRecord>(start_record(records[i], provider, templates));
          converse(records[i], provider, templates, options.record_timings, *out);
          verifiers.submit([&, i, out] {
            guard([&] {
              assess(records[i], options, *out);
              ordered.put(i, std::move(*out));
            });
          });
        });
      });
    }
    requests.wait_idle();
    verifiers.wait_idle();
  }
  if (failure) std::rethrow_exception(failure);
}

std::string_view to_string(JudgeAnswer a) {
  switch (a) {
    case JudgeAnswer::Yes: return "yes";
    case JudgeAnswer::No: return "no";
    case JudgeAnswer::Unparseable: return "unparseable";
  }
  return "?";
}

JudgeAnswer judge_answer_from_string(std::string_view s) {
  if (s == "yes") return JudgeAnswer::Yes;
  if (s == "no") return JudgeAnswer::No;
  if (s == "unparseable") return JudgeAnswer::Unparseable;
  throw ConfigError("unknown judge answer '" + std::string(s) + "'");
}

JudgeAnswer parse_judge_answer(std::string_view reply) {
  std::string lower(reply);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const std::size_t marker = lower.rfind("[answer]");
  if (marker == std::string::npos) return JudgeAnswer::Unparseable;
  static const std::regex word(R"(\b(yes|no)\b)");
  const std::string tail = lower.substr(marker + 8);
  JudgeAnswer answer = JudgeAnswer::Unparseable;
  for (auto it = std::sregex_iterator(tail.begin(), tail.end(), word); it != std::sregex_iterator();
       ++it) {
    answer = (*it)[1] == "yes" ? JudgeAnswer::Yes : JudgeAnswer::No;
  }
  return answer;
}

namespace {

syntax::ParseOptions parse_options_for(const JudgePair& pair) {
  syntax::ParseOptions o;
  if (pair.formalism == syntax::Formalism::Regex && !pair.alphabet.empty()) {
    o.alphabet = syntax::Alphabet(pair.alphabet);
  }
  return o;
}

JudgeRecord start_judge(const JudgePair& pair, const Provider& provider, const PromptTemplate& t) {
  JudgeRecord out;
  out.pair = pair;
  out.model = provider.model();
  out.prompt_id = t.id;
  return out;
}

void ask(const PromptTemplate& t, Provider& provider, JudgeRecord& out) {
  const auto opts = parse_options_for(out.pair);
  const auto a = syntax::parse_expression(out.pair.phi, out.pair.formalism, opts);
  const auto b = syntax::parse_expression(out.pair.phi_prime, out.pair.formalism, opts);
  try {
    out.reply = provider.complete(render_prompt(t, judge_context(a, b))).text;
    out.answer = parse_judge_answer(out.reply);
  } catch (const ProviderError& e) {
    out.error = std::string(to_string(e.kind())) + ": " + e.what();
  }
}

}  // namespace

JudgeRecord judge(const JudgePair& pair, Provider& provider, const PromptTemplate& t) {
  JudgeRecord out = start_judge(pair, provider, t);
  ask(t, provider, out);
  return out;
}

void run_judges(std::span<const JudgePair> pairs, Provider& provider, const PromptTemplate& t,
                std::size_t width, const std::function<void(JudgeRecord)>& emit) {
  OrderedEmitter<JudgeRecord> ordered(emit);
  std::mutex failure_mutex;
  std::exception_ptr failure;
  {
    ThreadPool pool(std::max<std::size_t>(1, width));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      pool.submit([&, i] {
        try {
          JudgeRecord r = start_judge(pairs[i], provider, t);
          ask(t, provider, r);
          ordered.put(i, std::move(r));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    pool.wait_idle();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<JudgePair> judge_pairs(std::span<const RoundTripRecord> records) {
  std::vector<JudgePair> out;
  for (const auto& r : records) {
    if (!r.parsed || !r.verdict || r.verdict->status == verify::Status::Unknown) continue;
    out.push_back({r.record_id, r.formalism, r.batch_index, r.category_value, r.phi, *r.parsed,
                   r.verdict->status, r.alphabet});
  }
  return out;
}

namespace {

template <class Node>
bool drop_double_negation(Node& n) {
  if (n.kind == Node::Kind::Not && n.children[0].kind == Node::Kind::Not) {
    Node inner = std::move(n.children[0].children[0]);
    n = std::move(inner);
    return true;
  }
  for (auto& c : n.children) {
    if (drop_double_negation(c)) return true;
  }
  return false;
}

bool collapse_star(syntax::RegexAst& r) {
  using K = syntax::RegexAst::Kind;
  if (r.kind == K::Star && r.children[0].kind == K::Star) {
    syntax::RegexAst inner = std::move(r.children[0]);
    r = std::move(inner);
    return true;
  }
  for (auto& c : r.children) {
    if (collapse_star(c)) return true;
  }
  return false;
}

bool double_star(syntax::RegexAst& r) {
  if (r.kind == syntax::RegexAst::Kind::Star) {
    syntax::RegexAst copy = r;
    r = syntax::RegexAst::concat({copy, copy});
    return true;
  }
  for (auto& c : r.children) {
    if (double_star(c)) return true;
  }
  return false;
}

}  // namespace

syntax::FormalExpression equivalent_variant(const syntax::FormalExpression& e) {
  switch (e.formalism) {
    case syntax::Formalism::Prop: {
      syntax::PropFormula f = e.prop();
      if (!drop_double_negation(f)) {
        f = syntax::PropFormula::negation(syntax::PropFormula::negation(std::move(f)));
      }
      return syntax::parse_expression(syntax::make_expression(std::move(f)).canonical_text,
                                      e.formalism);
    }
    case syntax::Formalism::Fol: {
      syntax::FolNode t = syntax::fol_tree(e.fol());
      if (!drop_double_negation(t)) {
        t = syntax::FolNode::negation(syntax::FolNode::negation(std::move(t)));
      }
      return syntax::parse_expression(
          syntax::make_expression(syntax::fol_from_tree(std::move(t))).canonical_text,
          e.formalism);
    }
    case syntax::Formalism::Regex: {
      syntax::RegexAst r = e.regex();
      if (!collapse_star(r)) double_star(r);
      return syntax::parse_expression(syntax::make_expression(std::move(r)).canonical_text,
                                      e.formalism);
    }
  }
  return e;
}

std::vector<JudgePair> balance_pairs(std::vector<JudgePair> pairs,
                                     const verify::VerifierOptions& options) {
  const auto positives = static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(),
                    [](const JudgePair& p) { return p.ground_truth == verify::Status::Equivalent; }));
  const std::size_t negatives = pairs.size() - positives;
  std::size_t missing = negatives > positives ? negatives - positives : 0;
  const std::size_t original = pairs.size();
  for (std::size_t i = 0; i < original && missing > 0; ++i) {
    const JudgePair source = pairs[i];
    const auto popts = parse_options_for(source);
    const auto phi = syntax::parse_expression(source.phi, source.formalism, popts);
    const auto variant = equivalent_variant(phi);
    if (variant.canonical_text == phi.canonical_text) continue;
    verify::VerifierOptions vopts = options;
    if (!source.alphabet.empty()) vopts.alphabet = syntax::Alphabet(source.alphabet);
    if (verify::verify(phi, variant, vopts).status != verify::Status::Equivalent) continue;
    JudgePair p = source;
    p.id = source.id + "+pos";
    p.phi_prime = variant.canonical_text;
    p.ground_truth = verify::Status::Equivalent;
    pairs.push_back(std::move(p));
    --missing;
  }
  return pairs;
}

}  // namespace formaltrip::llm
