#include "formaltrip/store/run_config.hpp"

#include <set>

#include "formaltrip/common/error.hpp"
#include "formaltrip/store/dataset_io.hpp"
#include "store/json_codec.hpp"

namespace formaltrip::store {

namespace {

using detail::ojson;

class Section {
 public:
  Section(const ojson& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j.is_object()) throw ConfigError(name_ + " must be an object");
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown key " + name_ + "." + key);
    }
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const ojson::exception&) {
      throw ConfigError(name_ + "." + key + " has the wrong type");
    }
  }

  template <class T, class F>
  void map(const char* key, T& out, F convert) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    std::string s;
    get(key, s);
    out = convert(s);
  }

  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  Section child(const char* key) { return Section(j_.at(key), name_ + "." + key); }

 private:
  const ojson& j_;
  std::string name_;
  std::set<std::string> seen_;
};

void read_generate(Section s, GenerateConfig& g) {
  s.get("grammar", g.grammar);
  if (s.has("formalism")) {
    std::string f;
    s.get("formalism", f);
    g.formalism = syntax::formalism_from_string(f);
  }
  auto& c = g.generation;
  s.get("depth", c.depth);
  s.get("branching", c.branching);
  s.get("sample_count", c.sample_count);
  s.get("batches", c.batches);
  s.map("metric", c.metric, [](const std::string& m) { return syntax::metric_from_string(m); });
  if (s.has("vocabulary")) {
    Section v = s.child("vocabulary");
    auto& vc = g.vocabulary;
    v.map("naming", vc.naming,
          [](const std::string& m) { return grammar::naming_mode_from_string(m); });
    v.get("num_propositions", vc.num_propositions);
    v.get("num_predicates", vc.num_predicates);
    v.get("num_objects", vc.num_objects);
    v.get("min_predicate_arity", vc.min_predicate_arity);
    v.get("max_predicate_arity", vc.max_predicate_arity);
    v.get("free_variable_prob", vc.free_variable_prob);
    if (v.has("max_free_variables")) {
      std::size_t n = 0;
      v.get("max_free_variables", n);
      vc.max_free_variables = n;
    }
    v.get("alphabet_size", vc.alphabet_size);
    v.finish();
  }
  s.finish();
}

void read_provider(Section s, llm::ProviderConfig& p) {
  s.map("kind", p.kind, [](const std::string& k) { return llm::provider_kind_from_string(k); });
  s.get("endpoint", p.endpoint);
  s.get("model", p.model);
  s.get("temperature", p.temperature);
  s.get("max_tokens", p.max_tokens);
  s.get("timeout_seconds", p.timeout_seconds);
  s.get("requests_per_minute", p.requests_per_minute);
  s.get("credential_env", p.credential_env);
  std::string fixtures;
  s.get("fixtures", fixtures);
  if (!fixtures.empty()) p.fixtures = fixtures;
  if (s.has("fallback_reply")) {
    std::string reply;
    s.get("fallback_reply", reply);
    p.fallback_reply = reply;
  }
  s.get("corruption_probability", p.corruption_probability);
  s.get("debug", p.debug);
  if (s.has("retry")) {
    Section r = s.child("retry");
    r.get("max_attempts", p.retry.max_attempts);
    r.get("backoff_base_seconds", p.retry.backoff_base_seconds);
    r.finish();
  }
  for (const char* forbidden : {"api_key", "key", "token"}) {
    if (s.has(forbidden)) {
      throw ConfigError(std::string("provider.") + forbidden +
                        ": credentials belong in the environment variable named by "
                        "provider.credential_env");
    }
  }
  s.finish();
}

void read_verifier(Section s, verify::VerifierOptions& v) {
  s.get("prop_exhaustive_limit", v.prop.exhaustive_limit);
  s.get("fol_max_clauses", v.fol.budget.max_clauses);
  s.get("fol_max_seconds", v.fol.budget.max_seconds);
  s.get("fol_max_model_domain", v.fol.budget.max_model_domain);
  s.get("fol_close_free_variables", v.fol.close_free_variables);
  s.get("dfa_parallel_edges", v.dfa.count_parallel_edges);
  s.finish();
}

void read_run(Section s, RunConfig& c) {
  s.get("datasets", c.datasets);
  s.get("shots", c.shots);
  s.get("chain_of_thought", c.chain_of_thought);
  std::string path;
  s.get("templates_dir", path);
  if (!path.empty()) c.templates_dir = path;
  s.get("request_width", c.request_width);
  s.get("verifier_width", c.verifier_width);
  s.get("resume", c.resume);
  s.get("timings", c.record_timings);
  path.clear();
  s.get("cache", path);
  if (!path.empty()) c.cache = path;
  path.clear();
  s.get("record_fixtures", path);
  if (!path.empty()) c.record_fixtures = path;
  s.finish();
}

}  // namespace

void RunConfig::validate() const {
  generate.generation.validate();
  generate.vocabulary.validate();
  provider.validate();
  verifier.fol.budget.validate();
  if (shots != 0 && shots != 2) throw ConfigError("shots must be 0 or 2");
  if (request_width < 1 || verifier_width < 1) {
    throw ConfigError("concurrency widths must be at least 1");
  }
  if (!templates_dir.empty() && !std::filesystem::is_directory(templates_dir)) {
    throw ConfigError("templates_dir " + templates_dir.string() + " is not a directory");
  }
}

RunConfig run_config_from_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  RunConfig c;
  Section root(j, "config");
  root.get("seed", c.seed);
  std::string out;
  root.get("output_dir", out);
  if (!out.empty()) c.output_dir = out;
  if (root.has("generate")) read_generate(root.child("generate"), c.generate);
  if (root.has("provider")) read_provider(root.child("provider"), c.provider);
  if (root.has("verifier")) read_verifier(root.child("verifier"), c.verifier);
  if (root.has("run")) read_run(root.child("run"), c);
  root.finish();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  try {
    return run_config_from_json(read_text_file(path));
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace formaltrip::store
