#include "formaltrip/store/codec.hpp"

#include "store/json_codec.hpp"

namespace formaltrip::store {

namespace detail {

namespace {

template <class T>
ojson optional_json(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

template <class T>
std::optional<T> optional_from(const ojson& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

ojson vocabulary_config_json(const grammar::VocabularyConfig& c) {
  ojson j;
  j["naming"] = std::string(grammar::to_string(c.naming));
  j["num_propositions"] = c.num_propositions;
  j["num_predicates"] = c.num_predicates;
  j["num_objects"] = c.num_objects;
  j["min_predicate_arity"] = c.min_predicate_arity;
  j["max_predicate_arity"] = c.max_predicate_arity;
  j["free_variable_prob"] = c.free_variable_prob;
  j["max_free_variables"] = optional_json(c.max_free_variables);
  j["alphabet_size"] = c.alphabet_size;
  return j;
}

grammar::VocabularyConfig vocabulary_config_from(const ojson& j) {
  grammar::VocabularyConfig c;
  c.naming = grammar::naming_mode_from_string(j.at("naming").get<std::string>());
  c.num_propositions = j.at("num_propositions").get<std::size_t>();
  c.num_predicates = j.at("num_predicates").get<std::size_t>();
  c.num_objects = j.at("num_objects").get<std::size_t>();
  c.min_predicate_arity = j.at("min_predicate_arity").get<std::size_t>();
  c.max_predicate_arity = j.at("max_predicate_arity").get<std::size_t>();
  c.free_variable_prob = j.at("free_variable_prob").get<double>();
  c.max_free_variables = optional_from<std::size_t>(j, "max_free_variables");
  c.alphabet_size = j.at("alphabet_size").get<std::size_t>();
  return c;
}

ojson vocabulary_json(const grammar::Vocabulary& v) {
  ojson j = vocabulary_config_json(v.config);
  ojson arities = ojson::object();
  for (std::size_t i = 0; i < v.predicates.size(); ++i) arities[v.predicates[i]] = v.arities[i];
  j["predicate_arities"] = arities;
  j["objects"] = v.objects;
  j["alphabet"] = v.alphabet.symbols();
  return j;
}

grammar::Vocabulary vocabulary_from(const ojson& j) {
  grammar::Vocabulary v;
  v.config = vocabulary_config_from(j);
  for (std::size_t i = 1; i <= v.config.num_propositions; ++i) {
    v.propositions.push_back("p" + std::to_string(i));
  }
  for (const auto& [name, arity] : j.at("predicate_arities").items()) {
    v.predicates.push_back(name);
    v.arities.push_back(arity.get<std::size_t>());
  }
  v.objects = j.at("objects").get<std::vector<std::string>>();
  v.alphabet = syntax::Alphabet(j.at("alphabet").get<std::string>());
  return v;
}

ojson generation_json(const grammar::GenerationConfig& c) {
  ojson j;
  j["depth"] = c.depth;
  j["branching"] = c.branching;
  j["sample_count"] = c.sample_count;
  j["batches"] = c.batches;
  j["metric"] = std::string(syntax::to_string(c.metric));
  j["seed"] = c.seed;
  return j;
}

grammar::GenerationConfig generation_from(const ojson& j) {
  grammar::GenerationConfig c;
  c.depth = j.at("depth").get<std::size_t>();
  c.branching = j.at("branching").get<std::size_t>();
  c.sample_count = j.at("sample_count").get<std::size_t>();
  c.batches = j.at("batches").get<std::size_t>();
  c.metric = syntax::metric_from_string(j.at("metric").get<std::string>());
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

ojson category_json(syntax::Metric m, double value) {
  if (m == syntax::Metric::DfaDensity) return value;
  return static_cast<std::uint64_t>(value);
}

ojson verdict_json(const verify::EquivalenceVerdict& v) {
  ojson j;
  j["status"] = std::string(verify::to_string(v.status));
  if (const auto* a = std::get_if<verify::Assignment>(&v.witness)) {
    ojson values = ojson::object();
    for (const auto& [name, value] : *a) values[name] = value;
    j["witness"] = {{"type", "assignment"}, {"values", values}};
  } else if (const auto* m = std::get_if<verify::FiniteModel>(&v.witness)) {
    ojson constants = ojson::object(), arities = ojson::object(), relations = ojson::object();
    for (const auto& [c, e] : m->constants) constants[c] = e;
    for (const auto& [p, a] : m->arities) arities[p] = a;
    for (const auto& [p, tuples] : m->relations) {
      ojson list = ojson::array();
      for (const auto& t : tuples) list.push_back(t);
      relations[p] = list;
    }
    j["witness"] = {{"type", "model"},
                    {"domain_size", m->domain_size},
                    {"constants", constants},
                    {"arities", arities},
                    {"relations", relations}};
  } else if (const auto* w = std::get_if<std::string>(&v.witness)) {
    j["witness"] = {{"type", "word"}, {"word", *w}};
  } else {
    j["witness"] = nullptr;
  }
  j["reason"] = v.reason;
  return j;
}

verify::EquivalenceVerdict verdict_from(const ojson& j) {
  verify::EquivalenceVerdict v;
  v.status = verify::status_from_string(j.at("status").get<std::string>());
  v.reason = j.at("reason").get<std::string>();
  const ojson& w = j.at("witness");
  if (w.is_null()) return v;
  const std::string type = w.at("type").get<std::string>();
  if (type == "assignment") {
    verify::Assignment a;
    for (const auto& [name, value] : w.at("values").items()) a[name] = value.get<bool>();
    v.witness = a;
  } else if (type == "model") {
    verify::FiniteModel m;
    m.domain_size = w.at("domain_size").get<std::size_t>();
    for (const auto& [c, e] : w.at("constants").items()) m.constants[c] = e.get<std::size_t>();
    for (const auto& [p, a] : w.at("arities").items()) m.arities[p] = a.get<std::size_t>();
    for (const auto& [p, list] : w.at("relations").items()) {
      auto& tuples = m.relations[p];
      for (const auto& t : list) tuples.insert(t.get<std::vector<std::size_t>>());
    }
    v.witness = m;
  } else if (type == "word") {
    v.witness = w.at("word").get<std::string>();
  } else {
    throw IoError("unknown witness type '" + type + "'");
  }
  return v;
}

ojson dataset_record_json(const grammar::DatasetRecord& r) {
  ojson j;
  j["id"] = r.id;
  j["formalism"] = std::string(syntax::to_string(r.formalism));
  j["grammar_id"] = r.grammar_id;
  j["batch_index"] = r.batch_index;
  j["category_metric"] = std::string(syntax::to_string(r.category_metric));
  j["category_value"] = category_json(r.category_metric, r.category_value);
  j["expression"] = r.expression.canonical_text;
  j["cfg_expression"] = r.cfg_expression;
  j["cfg_depth"] = r.cfg_depth;
  j["vocabulary"] = vocabulary_json(r.vocabulary);
  j["seed"] = r.seed;
  return j;
}

grammar::DatasetRecord dataset_record_from(const ojson& j) {
  grammar::DatasetRecord r;
  r.id = j.at("id").get<std::string>();
  r.formalism = syntax::formalism_from_string(j.at("formalism").get<std::string>());
  r.grammar_id = j.at("grammar_id").get<std::string>();
  r.batch_index = j.at("batch_index").get<std::size_t>();
  r.category_metric = syntax::metric_from_string(j.at("category_metric").get<std::string>());
  r.category_value = j.at("category_value").get<double>();
  r.cfg_expression = j.at("cfg_expression").get<std::string>();
  r.cfg_depth = j.at("cfg_depth").get<std::size_t>();
  r.vocabulary = vocabulary_from(j.at("vocabulary"));
  r.seed = j.at("seed").get<std::uint64_t>();
  syntax::ParseOptions opts;
  if (r.formalism == syntax::Formalism::Regex) opts.alphabet = r.vocabulary.alphabet;
  r.expression = syntax::parse_expression(j.at("expression").get<std::string>(), r.formalism, opts);
  return r;
}

ojson round_trip_json(const llm::RoundTripRecord& r) {
  ojson j;
  j["record_id"] = r.record_id;
  j["model"] = r.model;
  j["formalism"] = std::string(syntax::to_string(r.formalism));
  j["batch_index"] = r.batch_index;
  j["category_metric"] = std::string(syntax::to_string(r.category_metric));
  j["category_value"] = category_json(r.category_metric, r.category_value);
  j["cfg_depth"] = r.cfg_depth;
  j["alphabet"] = r.alphabet;
  j["phi"] = r.phi;
  j["interpret_prompt_id"] = r.interpret_prompt_id;
  j["compile_prompt_id"] = r.compile_prompt_id;
  j["interpretation"] = r.interpretation;
  j["compile_reply"] = r.compile_reply;
  j["parsed"] = optional_json(r.parsed);
  j["noncompliant_reason"] = optional_json(r.noncompliant_reason);
  j["verdict"] = r.verdict ? verdict_json(*r.verdict) : ojson(nullptr);
  j["error"] = optional_json(r.error);
  j["timings_ms"] = {{"interpret", r.timings.interpret_ms},
                     {"compile", r.timings.compile_ms},
                     {"verify", r.timings.verify_ms}};
  j["tokens"] = {{"prompt", optional_json(r.tokens.prompt_tokens)},
                 {"completion", optional_json(r.tokens.completion_tokens)}};
  return j;
}

llm::RoundTripRecord round_trip_from(const ojson& j) {
  llm::RoundTripRecord r;
  r.record_id = j.at("record_id").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.formalism = syntax::formalism_from_string(j.at("formalism").get<std::string>());
  r.batch_index = j.at("batch_index").get<std::size_t>();
  r.category_metric = syntax::metric_from_string(j.at("category_metric").get<std::string>());
  r.category_value = j.at("category_value").get<double>();
  r.cfg_depth = j.at("cfg_depth").get<std::size_t>();
  r.alphabet = j.at("alphabet").get<std::string>();
  r.phi = j.at("phi").get<std::string>();
  r.interpret_prompt_id = j.at("interpret_prompt_id").get<std::string>();
  r.compile_prompt_id = j.at("compile_prompt_id").get<std::string>();
  r.interpretation = j.at("interpretation").get<std::string>();
  r.compile_reply = j.at("compile_reply").get<std::string>();
  r.parsed = optional_from<std::string>(j, "parsed");
  r.noncompliant_reason = optional_from<std::string>(j, "noncompliant_reason");
  if (!j.at("verdict").is_null()) r.verdict = verdict_from(j.at("verdict"));
  r.error = optional_from<std::string>(j, "error");
  const ojson& t = j.at("timings_ms");
  r.timings = {t.at("interpret").get<double>(), t.at("compile").get<double>(),
               t.at("verify").get<double>()};
  r.tokens.prompt_tokens = optional_from<long>(j.at("tokens"), "prompt");
  r.tokens.completion_tokens = optional_from<long>(j.at("tokens"), "completion");
  if (r.verdict.has_value() != r.parsed.has_value()) {
    throw IoError("record " + r.record_id + ": verdict present without a parsed formula");
  }
  return r;
}

ojson judge_json(const llm::JudgeRecord& r) {
  ojson j;
  j["pair_id"] = r.pair.id;
  j["model"] = r.model;
  j["formalism"] = std::string(syntax::to_string(r.pair.formalism));
  j["batch_index"] = r.pair.batch_index;
  j["category_value"] = r.pair.category_value;
  j["alphabet"] = r.pair.alphabet;
  j["phi"] = r.pair.phi;
  j["phi_prime"] = r.pair.phi_prime;
  j["ground_truth"] = std::string(verify::to_string(r.pair.ground_truth));
  j["prompt_id"] = r.prompt_id;
  j["answer"] = std::string(llm::to_string(r.answer));
  j["reply"] = r.reply;
  j["error"] = optional_json(r.error);
  return j;
}

llm::JudgeRecord judge_from(const ojson& j) {
  llm::JudgeRecord r;
  r.pair.id = j.at("pair_id").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.pair.formalism = syntax::formalism_from_string(j.at("formalism").get<std::string>());
  r.pair.batch_index = j.at("batch_index").get<std::size_t>();
  r.pair.category_value = j.at("category_value").get<double>();
  r.pair.alphabet = j.at("alphabet").get<std::string>();
  r.pair.phi = j.at("phi").get<std::string>();
  r.pair.phi_prime = j.at("phi_prime").get<std::string>();
  r.pair.ground_truth = verify::status_from_string(j.at("ground_truth").get<std::string>());
  r.prompt_id = j.at("prompt_id").get<std::string>();
  r.answer = llm::judge_answer_from_string(j.at("answer").get<std::string>());
  r.reply = j.at("reply").get<std::string>();
  r.error = optional_from<std::string>(j, "error");
  return r;
}

ojson parse_line(std::string_view line, std::string_view what) {
  try {
    return ojson::parse(line);
  } catch (const ojson::exception& e) {
    throw IoError("malformed " + std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

namespace {

template <class T, class F>
T decode(std::string_view line, std::string_view what, F from) {
  const auto j = detail::parse_line(line, what);
  try {
    return from(j);
  } catch (const nlohmann::ordered_json::exception& e) {
    throw IoError("incomplete " + std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string to_json_line(const grammar::DatasetRecord& r) {
  return detail::dataset_record_json(r).dump();
}

grammar::DatasetRecord dataset_record_from_json(std::string_view line) {
  return decode<grammar::DatasetRecord>(line, "dataset record", detail::dataset_record_from);
}

std::string to_json_line(const llm::RoundTripRecord& r) { return detail::round_trip_json(r).dump(); }

llm::RoundTripRecord round_trip_record_from_json(std::string_view line) {
  return decode<llm::RoundTripRecord>(line, "round-trip record", detail::round_trip_from);
}

std::string to_json_line(const llm::JudgeRecord& r) { return detail::judge_json(r).dump(); }

llm::JudgeRecord judge_record_from_json(std::string_view line) {
  return decode<llm::JudgeRecord>(line, "judge record", detail::judge_from);
}

std::string to_json_line(const verify::EquivalenceVerdict& v) {
  return detail::verdict_json(v).dump();
}

verify::EquivalenceVerdict verdict_from_json(std::string_view line) {
  return decode<verify::EquivalenceVerdict>(line, "verdict", detail::verdict_from);
}

}  // namespace formaltrip::store
