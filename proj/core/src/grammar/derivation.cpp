#include "formaltrip/grammar/derivation.hpp"

#include <algorithm>
#include <set>

namespace formaltrip::grammar {

void GenerationConfig::validate() const {
  if (depth < 1) throw ConfigError("depth must be at least 1");
  if (branching < 1) throw ConfigError("branching factor must be at least 1");
  if (sample_count < 1) throw ConfigError("sample_count must be at least 1");
  if (batches < 1) throw ConfigError("batches must be at least 1");
}

bool is_terminal_form(const Grammar& g, std::span<const Symbol> form) {
  return std::none_of(form.begin(), form.end(), [&](Symbol s) { return g.is_nonterminal(s); });
}

DerivationTree grow_tree(const Grammar& g, const GenerationConfig& config, Rng& rng) {
  config.validate();
  DerivationTree tree;
  tree.nodes.push_back(DerivationNode{{g.start()}, 0, std::nullopt, std::nullopt});

  std::set<std::vector<Symbol>> seen_leaves;
  // SampleN(N[d-1], n) is drawn when level d-1 closes, so only sampled nodes are pooled.
  std::vector<std::size_t> sampled = {0};

  for (std::size_t d = 1; d <= config.depth && !sampled.empty(); ++d) {
    std::vector<DerivationNode> children;
    for (std::size_t parent : sampled) {
      const auto form = tree.nodes[parent].form;
      const auto pos = std::find_if(form.begin(), form.end(),
                                    [&](Symbol s) { return g.is_nonterminal(s); });
      const auto& applicable = g.rules_for(*pos);
      for (std::size_t r : rng.sample_indices(applicable.size(), config.branching)) {
        const std::size_t rule = applicable[r];
        DerivationNode child;
        child.depth = d;
        child.applied_rule = rule;
        child.parent = parent;
        child.form.assign(form.begin(), pos);
        const auto& rhs = g.rules()[rule].rhs;
        child.form.insert(child.form.end(), rhs.begin(), rhs.end());
        child.form.insert(child.form.end(), pos + 1, form.end());
        if (is_terminal_form(g, child.form)) {
          if (seen_leaves.insert(child.form).second) {
            tree.leaves.push_back(tree.nodes.size());
            tree.nodes.push_back(std::move(child));
          }
        } else {
          children.push_back(std::move(child));
        }
      }
    }
    sampled.clear();
    if (d == config.depth) break;
    for (std::size_t pick : rng.sample_indices(children.size(), config.branching)) {
      sampled.push_back(tree.nodes.size());
      tree.nodes.push_back(std::move(children[pick]));
    }
  }
  if (tree.leaves.empty()) {
    throw EmptyFrontier("grammar '" + g.id() + "' reaches no terminal string within depth " +
                        std::to_string(config.depth));
  }
  return tree;
}

std::vector<std::size_t> derivation_of(const DerivationTree& tree, std::size_t node) {
  std::vector<std::size_t> rules;
  for (std::optional<std::size_t> cur = node; cur; cur = tree.nodes[*cur].parent) {
    if (tree.nodes[*cur].applied_rule) rules.push_back(*tree.nodes[*cur].applied_rule);
  }
  std::reverse(rules.begin(), rules.end());
  return rules;
}

}  // namespace formaltrip::grammar
