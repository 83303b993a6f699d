#include "formaltrip/grammar/dataset.hpp"

#include <cstdio>
#include <map>
#include <optional>

#include "formaltrip/common/error.hpp"
#include "formaltrip/verify/verify.hpp"

namespace formaltrip::grammar {

using syntax::Formalism;
using syntax::Metric;

syntax::Formalism builtin_formalism(std::string_view grammar_id) {
  if (grammar_id == "ksat3" || grammar_id == "prop") return Formalism::Prop;
  if (grammar_id == "fol") return Formalism::Fol;
  if (grammar_id == "regex") return Formalism::Regex;
  throw ConfigError("'" + std::string(grammar_id) + "' is not a built-in grammar");
}

syntax::Metric default_metric(syntax::Formalism f) {
  return f == Formalism::Regex ? Metric::CfgDepth : Metric::OperatorTotal;
}

syntax::ComplexityProfile DatasetRecord::profile() const {
  syntax::ComplexityProfile p = verify::full_profile(expression, vocabulary.alphabet);
  p.cfg_depth = cfg_depth;
  return p;
}

std::size_t Dataset::size() const {
  std::size_t n = 0;
  for (const auto& b : batches) n += b.size();
  return n;
}

std::vector<std::string> Dataset::underfilled() const {
  std::vector<std::string> out;
  for (const auto& s : summaries) {
    for (const auto& c : s.categories) {
      if (c.available >= config.sample_count) continue;
      char value[32];
      std::snprintf(value, sizeof value, "%g", c.value);
      out.push_back("batch " + std::to_string(s.index) + ": " +
                    std::string(syntax::to_string(metric)) + "=" + value + " has " +
                    std::to_string(c.taken) + " of " + std::to_string(config.sample_count));
    }
  }
  return out;
}

std::optional<double> leaf_metric(const Grammar& g, std::span<const Symbol> form,
                                  std::size_t depth, syntax::Metric m) {
  if (syntax::metric_needs_dfa(m)) return std::nullopt;
  if (m == Metric::CfgDepth) return static_cast<double>(depth);
  std::size_t ands = 0, ors = 0, nots = 0, stars = 0;
  for (Symbol s : form) {
    const std::string& t = g.name(s);
    if (t == "\xE2\x88\xA7") ++ands;
    else if (t == "\xE2\x88\xA8") ++ors;
    else if (t == "\xC2\xAC") ++nots;
    else if (t == "*") ++stars;
  }
  switch (m) {
    case Metric::AndCount: return static_cast<double>(ands);
    case Metric::OrCount: return static_cast<double>(ors);
    case Metric::NotCount: return static_cast<double>(nots);
    default: return static_cast<double>(ands + ors + nots + stars);
  }
}

std::string batch_file_name(std::string_view grammar_id, syntax::Metric m, std::size_t k) {
  return std::string(grammar_id) + "_" + std::string(syntax::to_string(m)) + "_batch" +
         std::to_string(k) + ".jsonl";
}

namespace {

struct Candidate {
  std::size_t leaf = 0;
  std::optional<Instantiation> instance;
};

}  // namespace

Dataset generate_dataset(const Grammar& g, syntax::Formalism formalism,
                         const VocabularyConfig& vocab, const GenerationConfig& config) {
  config.validate();
  vocab.validate();
  Dataset ds;
  ds.grammar_id = g.id();
  ds.formalism = formalism;
  ds.metric = config.metric;
  ds.config = config;
  ds.vocabulary = Vocabulary::resolve(vocab, config.seed);
  if (syntax::metric_needs_dfa(config.metric) && formalism != Formalism::Regex) {
    throw ConfigError(std::string(syntax::to_string(config.metric)) +
                      " applies to regex datasets only");
  }

  for (std::size_t b = 1; b <= config.batches; ++b) {
    const std::uint64_t batch_seed = derive_seed(config.seed, b);
    Rng walk(batch_seed);
    const DerivationTree tree = grow_tree(g, config, walk);
    Rng fill(derive_seed(batch_seed, 1));

    std::map<double, std::vector<Candidate>> groups;
    for (std::size_t i = 0; i < tree.leaves.size(); ++i) {
      const DerivationNode& leaf = tree.leaf(i);
      if (auto v = leaf_metric(g, leaf.form, leaf.depth, config.metric)) {
        groups[*v].push_back({i, std::nullopt});
        continue;
      }
      Instantiation inst = instantiate(g, leaf.form, formalism, ds.vocabulary, fill);
      syntax::ComplexityProfile p = verify::full_profile(inst.expression, ds.vocabulary.alphabet);
      p.cfg_depth = leaf.depth;
      groups[syntax::metric_value(p, config.metric)].push_back({i, std::move(inst)});
    }

    BatchSummary summary;
    summary.index = b;
    summary.seed = batch_seed;
    summary.leaves = tree.leaves.size();
    std::vector<DatasetRecord> records;
    for (auto& [value, members] : groups) {
      const auto picks = walk.sample_indices(members.size(), config.sample_count);
      summary.categories.push_back({value, members.size(), picks.size()});
      for (std::size_t k : picks) {
        Candidate& c = members[k];
        const DerivationNode& leaf = tree.leaf(c.leaf);
        if (!c.instance) c.instance = instantiate(g, leaf.form, formalism, ds.vocabulary, fill);
        DatasetRecord r;
        char id[64];
        std::snprintf(id, sizeof id, "%s-b%zu-%05zu", g.id().c_str(), b, records.size() + 1);
        r.id = id;
        r.formalism = formalism;
        r.grammar_id = g.id();
        r.batch_index = b;
        r.category_metric = config.metric;
        r.expression = std::move(c.instance->expression);
        r.cfg_expression = g.render(leaf.form);
        r.cfg_depth = leaf.depth;
        r.vocabulary = ds.vocabulary;
        r.seed = batch_seed;
        r.category_value = syntax::metric_value(r.profile(), config.metric);
        records.push_back(std::move(r));
      }
    }
    ds.batches.push_back(std::move(records));
    ds.summaries.push_back(std::move(summary));
  }
  return ds;
}

}  // namespace formaltrip::grammar
