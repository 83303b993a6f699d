#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "formaltrip/common/error.hpp"
#include "formaltrip/common/version.hpp"
#include "formaltrip/grammar/dataset.hpp"
#include "formaltrip/grammar/grammar.hpp"
#include "formaltrip/llm/pipeline.hpp"
#include "formaltrip/llm/provider.hpp"
#include "formaltrip/metrics/metrics.hpp"
#include "formaltrip/metrics/report.hpp"
#include "formaltrip/store/dataset_io.hpp"
#include "formaltrip/store/result_file.hpp"
#include "formaltrip/store/run_config.hpp"
#include "formaltrip/syntax/expression.hpp"
#include "formaltrip/verify/verify.hpp"

namespace formaltrip::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kUsage = 64;
constexpr int kInvalidExpression = 3;

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string safe_dir_name(std::string s) {
  for (char& c : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
    if (!ok) c = '_';
  }
  return s;
}

template <class T>
void override_with(T& target, const std::optional<T>& value) {
  if (value) target = *value;
}

struct Globals {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  bool verbose = false;
};

struct GenerateFlags {
  std::optional<std::string> grammar;
  std::optional<std::string> formalism;
  std::optional<std::size_t> depth, branching, sample_count, batches, alphabet_size;
  std::optional<std::size_t> num_propositions, num_predicates, num_objects;
  std::optional<std::size_t> min_arity, max_arity, max_free_variables;
  std::optional<double> free_variable_prob;
  std::optional<std::string> metric, naming;
};

struct ProviderFlags {
  std::optional<std::string> kind, model, endpoint, fixtures, fallback_reply, credential_env;
  std::optional<double> temperature, corruption, requests_per_minute, timeout;
  std::optional<int> max_tokens;
  std::optional<std::size_t> width;
  std::optional<std::string> cache, record_fixtures;
  bool debug = false;
};

struct RunFlags {
  std::vector<std::string> datasets;
  std::optional<int> shots;
  std::optional<std::string> templates_dir;
  std::optional<std::size_t> verifier_width, limit;
  bool resume = false;
  bool overwrite = false;
  bool timings = false;
};

struct JudgeFlags {
  std::vector<std::string> results;
  bool balance = false;
  bool yesno = false;
  std::optional<std::size_t> limit;
  bool resume = false;
  bool overwrite = false;
};

struct ReportFlags {
  std::vector<std::string> results;
  std::optional<std::string> by;
  std::optional<std::string> report_dir;
};

struct VerifyFlags {
  std::string formalism;
  std::string a;
  std::string b;
  std::optional<std::string> alphabet;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void load(const Globals& g) {
    verbose_ = g.verbose;
    if (g.config) config_ = store::load_run_config(*g.config);
    override_with(config_.seed, g.seed);
    if (g.output_dir) config_.output_dir = *g.output_dir;
  }

  int generate(const GenerateFlags& f) {
    auto& gen = config_.generate;
    override_with(gen.grammar, f.grammar);
    if (f.formalism) gen.formalism = syntax::formalism_from_string(*f.formalism);
    auto& c = gen.generation;
    override_with(c.depth, f.depth);
    override_with(c.branching, f.branching);
    override_with(c.sample_count, f.sample_count);
    override_with(c.batches, f.batches);
    c.seed = config_.seed;
    auto& v = gen.vocabulary;
    override_with(v.alphabet_size, f.alphabet_size);
    override_with(v.num_propositions, f.num_propositions);
    override_with(v.num_predicates, f.num_predicates);
    override_with(v.num_objects, f.num_objects);
    override_with(v.min_predicate_arity, f.min_arity);
    override_with(v.max_predicate_arity, f.max_arity);
    override_with(v.free_variable_prob, f.free_variable_prob);
    if (f.max_free_variables) v.max_free_variables = f.max_free_variables;
    if (f.naming) v.naming = grammar::naming_mode_from_string(*f.naming);

    std::optional<grammar::Grammar> loaded;
    const grammar::Grammar* g = nullptr;
    syntax::Formalism formalism;
    if (fs::is_regular_file(gen.grammar)) {
      if (!gen.formalism) throw ConfigError("--formalism is required with a grammar file");
      loaded = grammar::Grammar::from_rules(store::read_text_file(gen.grammar),
                                            fs::path(gen.grammar).stem().string());
      g = &*loaded;
      formalism = *gen.formalism;
    } else {
      g = &grammar::Grammar::builtin(gen.grammar);
      formalism = gen.formalism.value_or(grammar::builtin_formalism(gen.grammar));
    }
    c.metric = f.metric ? syntax::metric_from_string(*f.metric) : grammar::default_metric(formalism);

    const auto dataset = grammar::generate_dataset(*g, formalism, v, c);
    const fs::path dir = config_.output_dir / "datasets";
    const auto manifest = store::write_dataset(dataset, dir);
    out_ << "wrote " << manifest.record_count() << " records in " << manifest.files.size()
         << " batch files to " << dir.string() << "\n";
    out_ << syntax::to_string(manifest.metric) << "  records\n";
    for (const auto& t : manifest.totals) {
      out_ << (manifest.metric == syntax::Metric::DfaDensity ? fixed(t.value, 1)
                                                             : std::to_string(std::lround(t.value)))
           << "  " << t.records << "\n";
    }
    if (verbose_) {
      for (const auto& line : manifest.underfilled) err_ << "underfilled: " << line << "\n";
    } else if (!manifest.underfilled.empty()) {
      err_ << manifest.underfilled.size() << " categories held fewer than "
           << c.sample_count << " candidates (--verbose lists them)\n";
    }
    return 0;
  }

  int run(const ProviderFlags& p, const RunFlags& f) {
    apply_provider_flags(p);
    if (!f.datasets.empty()) config_.datasets = f.datasets;
    override_with(config_.shots, f.shots);
    if (f.templates_dir) config_.templates_dir = *f.templates_dir;
    override_with(config_.verifier_width, f.verifier_width);
    if (f.resume) config_.resume = true;
    if (f.timings) config_.record_timings = true;
    config_.validate();
    if (config_.datasets.empty()) throw ConfigError("no dataset given (--dataset)");

    std::vector<fs::path> files;
    for (const auto& spec : config_.datasets) {
      for (auto& path : store::resolve_dataset(spec, config_.output_dir)) files.push_back(path);
    }
    auto provider = build_provider();
    llm::PipelineOptions options;
    options.verifier = config_.verifier;
    options.request_width = config_.request_width;
    options.verifier_width = config_.verifier_width;
    options.record_timings = config_.record_timings;

    std::size_t budget = f.limit.value_or(SIZE_MAX);
    for (const auto& file : files) {
      const auto records = store::read_dataset_file(file);
      if (records.empty()) {
        err_ << file.string() << ": empty dataset, skipped\n";
        continue;
      }
      const auto formalism = records.front().formalism;
      const auto templates = templates_for(formalism);
      store::RunSettings settings;
      settings.format = store::ResultFormat::RoundTrip;
      settings.provider = config_.provider;
      settings.fixtures_sha256 = fixtures_digest();
      settings.templates = templates;
      settings.verifier = config_.verifier;
      const fs::path target = config_.output_dir / "results" / safe_dir_name(provider->model()) /
                              (file.stem().string() + ".jsonl");
      guard_existing(target, config_.resume || f.overwrite);
      store::ResultWriter writer(target, header_for(settings, store::file_sha256(file), *provider),
                                 config_.resume);
      std::vector<grammar::DatasetRecord> pending;
      for (const auto& r : records) {
        if (pending.size() >= budget) break;
        if (!writer.done(r.id)) pending.push_back(r);
      }
      budget -= pending.size();
      if (verbose_) {
        err_ << file.filename().string() << ": " << writer.completed().size() << " done, "
             << pending.size() << " to run\n";
      }
      std::size_t emitted = 0;
      llm::run_round_trips(pending, *provider, templates, options,
                           [&](llm::RoundTripRecord r) {
                             writer.append(r);
                             if (verbose_ && ++emitted % 100 == 0) {
                               err_ << "  " << emitted << "/" << pending.size() << "\n";
                             }
                           });
      summarize(target);
      if (budget == 0) break;
    }
    return 0;
  }

  int judge(const ProviderFlags& p, const JudgeFlags& f) {
    apply_provider_flags(p);
    config_.validate();
    std::vector<fs::path> inputs = collect_results(
        f.results.empty() ? std::vector<std::string>{(config_.output_dir / "results").string()}
                          : f.results,
        store::ResultFormat::RoundTrip);
    auto provider = build_provider();
    std::size_t budget = f.limit.value_or(SIZE_MAX);
    for (const auto& input : inputs) {
      const auto results = store::read_round_trip_file(input);
      if (results.torn_tail) err_ << input.string() << ": ignoring a torn final line\n";
      auto pairs = llm::judge_pairs(results.records);
      if (f.balance) pairs = llm::balance_pairs(std::move(pairs), config_.verifier);
      if (pairs.empty()) {
        err_ << input.string() << ": no decided pairs, skipped\n";
        continue;
      }
      const auto formalism = pairs.front().formalism;
      const auto templates = templates_for(formalism, !f.yesno);
      store::RunSettings settings;
      settings.format = store::ResultFormat::Judge;
      settings.provider = config_.provider;
      settings.fixtures_sha256 = fixtures_digest();
      settings.templates = templates;
      settings.verifier = config_.verifier;
      settings.balance = f.balance;
      const fs::path target = config_.output_dir / "judge" / safe_dir_name(provider->model()) /
                              (input.stem().string() + ".jsonl");
      guard_existing(target, f.resume || f.overwrite);
      store::ResultWriter writer(target, header_for(settings, store::file_sha256(input), *provider),
                                 f.resume);
      std::vector<llm::JudgePair> pending;
      for (const auto& pair : pairs) {
        if (pending.size() >= budget) break;
        if (!writer.done(pair.id)) pending.push_back(pair);
      }
      budget -= pending.size();
      llm::run_judges(pending, *provider, templates.judge, config_.request_width,
                      [&](llm::JudgeRecord r) { writer.append(r); });
      const auto written = store::read_judge_file(target);
      const auto scores = metrics::judge_scores(written.records);
      out_ << target.string() << ": " << written.records.size() << " pairs, TP "
           << scores.matrix.tp << " FP " << scores.matrix.fp << " TN " << scores.matrix.tn
           << " FN " << scores.matrix.fn << ", F1 " << fixed(scores.f1.value) << "\n";
      if (budget == 0) break;
    }
    return 0;
  }

  int report(const ReportFlags& f) {
    std::vector<std::string> roots = f.results;
    if (roots.empty()) {
      for (const char* sub : {"results", "judge"}) {
        if (fs::is_directory(config_.output_dir / sub)) {
          roots.push_back((config_.output_dir / sub).string());
        }
      }
    }
    std::vector<llm::RoundTripRecord> records;
    std::vector<llm::JudgeRecord> judges;
    std::size_t files = 0;
    for (const auto& path : collect_results(roots, std::nullopt)) {
      ++files;
      const auto header = store::read_result_header(path);
      if (header.format == store::ResultFormat::RoundTrip) {
        auto file = store::read_round_trip_file(path);
        if (file.torn_tail) err_ << path.string() << ": ignoring a torn final line\n";
        records.insert(records.end(), file.records.begin(), file.records.end());
      } else {
        auto file = store::read_judge_file(path);
        if (file.torn_tail) err_ << path.string() << ": ignoring a torn final line\n";
        judges.insert(judges.end(), file.records.begin(), file.records.end());
      }
    }
    if (records.empty()) throw metrics::EmptyInput("no round-trip records in the result files");
    syntax::Metric by = grammar::default_metric(records.front().formalism);
    if (f.by) {
      by = syntax::metric_from_string(*f.by);
    } else if (std::any_of(records.begin(), records.end(), [&](const auto& r) {
                 return r.formalism != records.front().formalism;
               })) {
      by = syntax::Metric::OperatorTotal;
    }
    const auto report = metrics::build_report(records, judges, by);
    const fs::path dir = f.report_dir ? fs::path(*f.report_dir) : config_.output_dir / "report";
    metrics::write_report(report, dir);
    out_ << metrics::text_table(report);
    if (verbose_) err_ << "read " << files << " result files; wrote " << dir.string() << "\n";
    return 0;
  }

  int verify(const VerifyFlags& f) {
    const auto formalism = syntax::formalism_from_string(f.formalism);
    syntax::ParseOptions parse;
    verify::VerifierOptions options = config_.verifier;
    if (f.alphabet) {
      parse.alphabet = syntax::Alphabet(*f.alphabet);
      options.alphabet = parse.alphabet;
    }
    syntax::FormalExpression a, b;
    try {
      a = syntax::parse_expression(operand(f.a), formalism, parse);
      b = syntax::parse_expression(operand(f.b), formalism, parse);
    } catch (const SyntaxError& e) {
      err_ << "invalid expression: " << e.what() << "\n";
      return kInvalidExpression;
    } catch (const ArityError& e) {
      err_ << "invalid expression: " << e.what() << "\n";
      return kInvalidExpression;
    }
    const auto v = verify::verify(a, b, options);
    out_ << verify::to_string(v.status) << "\n";
    if (v.has_witness()) out_ << "witness: " << verify::describe(v.witness) << "\n";
    if (!v.reason.empty()) out_ << "reason: " << v.reason << "\n";
    switch (v.status) {
      case verify::Status::Equivalent: return 0;
      case verify::Status::NotEquivalent: return 1;
      case verify::Status::Unknown: return 2;
    }
    return 2;
  }

 private:
  // "@path" reads the expression from a file.
  static std::string operand(const std::string& arg) {
    if (arg.size() > 1 && arg.front() == '@') {
      std::string text = store::read_text_file(arg.substr(1));
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      return text;
    }
    return arg;
  }

  void apply_provider_flags(const ProviderFlags& f) {
    auto& p = config_.provider;
    if (f.kind) p.kind = llm::provider_kind_from_string(*f.kind);
    override_with(p.model, f.model);
    override_with(p.endpoint, f.endpoint);
    if (f.fixtures) p.fixtures = *f.fixtures;
    if (f.fallback_reply) p.fallback_reply = *f.fallback_reply;
    override_with(p.credential_env, f.credential_env);
    override_with(p.temperature, f.temperature);
    override_with(p.corruption_probability, f.corruption);
    override_with(p.requests_per_minute, f.requests_per_minute);
    override_with(p.timeout_seconds, f.timeout);
    override_with(p.max_tokens, f.max_tokens);
    if (f.debug) p.debug = true;
    p.seed = config_.seed;
    override_with(config_.request_width, f.width);
    if (f.cache) config_.cache = *f.cache;
    if (f.record_fixtures) config_.record_fixtures = *f.record_fixtures;
  }

  std::unique_ptr<llm::Provider> build_provider() {
    auto provider = llm::make_provider(config_.provider);
    if (!config_.cache.empty()) {
      provider = std::make_unique<llm::CachingProvider>(
          std::move(provider), std::make_shared<llm::ResponseCache>(config_.cache));
    }
    if (!config_.record_fixtures.empty()) {
      provider = std::make_unique<llm::RecordingProvider>(std::move(provider),
                                                          config_.record_fixtures);
    }
    return provider;
  }

  std::string fixtures_digest() const {
    const auto& p = config_.provider;
    if (p.kind != llm::ProviderKind::ScriptedReplay || p.fixtures.empty()) return {};
    return store::file_sha256(p.fixtures);
  }

  llm::TemplateSet templates_for(syntax::Formalism f, bool cot = true) const {
    if (config_.templates_dir.empty()) return llm::TemplateSet::bundled(f, config_.shots, cot);
    return llm::TemplateSet::from_directory(config_.templates_dir, f, config_.shots, cot);
  }

  static store::ResultHeader header_for(const store::RunSettings& s, std::string dataset_hash,
                                        const llm::Provider& provider) {
    store::ResultHeader h;
    h.format = s.format;
    h.tool_version = std::string(version());
    h.config_hash = store::config_hash(s);
    h.dataset_hash = std::move(dataset_hash);
    h.model = provider.model();
    h.started_at = store::timestamp_now();
    return h;
  }

  static void guard_existing(const fs::path& target, bool allowed) {
    if (!allowed && fs::exists(target) && fs::file_size(target) > 0) {
      throw IoError(target.string() + " exists; pass --resume to continue it or --overwrite");
    }
  }

  void summarize(const fs::path& target) {
    const auto file = store::read_round_trip_file(target);
    out_ << target.string() << ": " << file.records.size() << " records";
    try {
      const auto c = metrics::compliance(file.records);
      const auto a = metrics::accuracy(file.records);
      out_ << ", compliance " << fixed(c.value) << ", accuracy " << fixed(a.value);
    } catch (const metrics::EmptyInput&) {
      out_ << ", no scored samples";
    }
    out_ << "\n";
  }

  std::vector<fs::path> collect_results(const std::vector<std::string>& roots,
                                        std::optional<store::ResultFormat> only) const {
    std::vector<fs::path> out;
    for (const auto& root : roots) {
      const fs::path p(root);
      if (fs::is_regular_file(p)) {
        out.push_back(p);
      } else if (fs::is_directory(p)) {
        for (const auto& e : fs::recursive_directory_iterator(p)) {
          if (e.is_regular_file() && e.path().extension() == ".jsonl") out.push_back(e.path());
        }
      } else {
        throw IoError("no result files at " + root);
      }
    }
    std::sort(out.begin(), out.end());
    if (only) {
      std::erase_if(out, [&](const fs::path& path) {
        return store::read_result_header(path).format != *only;
      });
    }
    if (out.empty()) throw IoError("no result files found");
    return out;
  }

  std::ostream& out_;
  std::ostream& err_;
  store::RunConfig config_;
  bool verbose_ = false;
};

void add_provider_flags(CLI::App* sub, ProviderFlags& p) {
  sub->add_option("--provider", p.kind,
                  "perfect-oracle | corrupting-oracle | replay | http");
  sub->add_option("--model", p.model, "Model name sent to the endpoint and recorded");
  sub->add_option("--endpoint", p.endpoint, "Chat-completions URL");
  sub->add_option("--fixtures", p.fixtures, "Replay fixture file (JSONL)");
  sub->add_option("--fallback-reply", p.fallback_reply, "Reply for prompts missing from fixtures");
  sub->add_option("--credential-env", p.credential_env, "Environment variable with the API key");
  sub->add_option("--temperature", p.temperature);
  sub->add_option("--max-tokens", p.max_tokens);
  sub->add_option("--timeout", p.timeout, "Request timeout in seconds");
  sub->add_option("--rpm", p.requests_per_minute, "Request rate limit per minute");
  sub->add_option("--corruption", p.corruption, "Corruption probability of corrupting-oracle");
  sub->add_option("--width", p.width, "Concurrent provider requests");
  sub->add_option("--cache", p.cache, "Persistent response cache file");
  sub->add_option("--record-fixtures", p.record_fixtures, "Append prompt/reply pairs to a file");
  sub->add_flag("--debug", p.debug, "Log requests with the key redacted");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Round-trip assessment of formal-syntax translation", "formaltrip"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--config", globals.config, "JSON run configuration");
  app.add_option("--seed", globals.seed, "Seed for generation and stochastic providers");
  app.add_option("--output-dir", globals.output_dir, "Root of datasets, results and reports");
  app.add_flag("-v,--verbose", globals.verbose);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Generate a dataset from a grammar");
  generate->add_option("--grammar", gen.grammar, "ksat3 | prop | fol | regex | rule file");
  generate->add_option("--formalism", gen.formalism, "prop | fol | regex (rule files)");
  generate->add_option("--depth", gen.depth, "Maximum derivation depth");
  generate->add_option("--branching", gen.branching, "Frontier nodes kept per level");
  generate->add_option("--sample-count", gen.sample_count, "Samples per category value");
  generate->add_option("--batches", gen.batches);
  generate->add_option("--metric", gen.metric, "Categorization metric");
  generate->add_option("--alphabet-size", gen.alphabet_size);
  generate->add_option("--propositions", gen.num_propositions);
  generate->add_option("--predicates", gen.num_predicates);
  generate->add_option("--objects", gen.num_objects);
  generate->add_option("--min-arity", gen.min_arity);
  generate->add_option("--max-arity", gen.max_arity);
  generate->add_option("--free-variable-prob", gen.free_variable_prob);
  generate->add_option("--max-free-variables", gen.max_free_variables);
  generate->add_option("--naming", gen.naming, "synthetic | english");

  ProviderFlags run_provider;
  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "Run round trips over dataset batches");
  add_provider_flags(run_cmd, run_provider);
  run_cmd->add_option("--dataset", run_flags.datasets, "Batch file, directory or name (prop_batch1)");
  run_cmd->add_option("--shots", run_flags.shots, "0 or 2");
  run_cmd->add_option("--templates-dir", run_flags.templates_dir, "Override prompt templates");
  run_cmd->add_option("--verifier-width", run_flags.verifier_width);
  run_cmd->add_option("--limit", run_flags.limit, "Run at most this many pending records");
  run_cmd->add_flag("--resume", run_flags.resume, "Continue existing result files");
  run_cmd->add_flag("--overwrite", run_flags.overwrite, "Replace existing result files");
  run_cmd->add_flag("--timings", run_flags.timings, "Record per-stage wall-clock timings");

  ProviderFlags judge_provider;
  JudgeFlags judge_flags;
  auto* judge_cmd = app.add_subcommand("judge", "Ask the model whether result pairs are equivalent");
  add_provider_flags(judge_cmd, judge_provider);
  judge_cmd->add_option("--results", judge_flags.results, "Round-trip result files or directories");
  judge_cmd->add_flag("--balance", judge_flags.balance, "Add verified positive pairs");
  judge_cmd->add_flag("--yesno", judge_flags.yesno, "Ask for a bare yes/no answer");
  judge_cmd->add_option("--limit", judge_flags.limit);
  judge_cmd->add_flag("--resume", judge_flags.resume);
  judge_cmd->add_flag("--overwrite", judge_flags.overwrite);

  ReportFlags report_flags;
  auto* report_cmd = app.add_subcommand("report", "Summarize result files");
  report_cmd->add_option("--results", report_flags.results, "Result files or directories");
  report_cmd->add_option("--by", report_flags.by,
                         "operator_total | cfg_depth | and | or | not | dfa_nodes | dfa_edges | "
                         "dfa_density");
  report_cmd->add_option("--report-dir", report_flags.report_dir);

  VerifyFlags verify_flags;
  auto* verify_cmd = app.add_subcommand("verify", "Check two expressions for equivalence");
  verify_cmd->add_option("formalism", verify_flags.formalism, "prop | fol | regex")->required();
  verify_cmd->add_option("a", verify_flags.a, "Expression or @file")->required();
  verify_cmd->add_option("b", verify_flags.b, "Expression or @file")->required();
  verify_cmd->add_option("--alphabet", verify_flags.alphabet, "Regex symbols, e.g. 01");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  Session session(out, err);
  const bool verifying = verify_cmd->parsed();
  try {
    session.load(globals);
    if (generate->parsed()) return session.generate(gen);
    if (run_cmd->parsed()) return session.run(run_provider, run_flags);
    if (judge_cmd->parsed()) return session.judge(judge_provider, judge_flags);
    if (report_cmd->parsed()) return session.report(report_flags);
    return session.verify(verify_flags);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return verifying ? kInvalidExpression : kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return verifying ? kInvalidExpression : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return verifying ? kInvalidExpression : 1;
  }
}

}  // namespace formaltrip::cli
