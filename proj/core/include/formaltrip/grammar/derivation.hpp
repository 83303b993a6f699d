#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formaltrip/common/error.hpp"
#include "formaltrip/common/rng.hpp"
#include "formaltrip/grammar/grammar.hpp"
#include "formaltrip/syntax/complexity.hpp"

namespace formaltrip::grammar {

class EmptyFrontier : public Error {
 public:
  using Error::Error;
};

struct GenerationConfig {
  std::size_t depth = 40;
  std::size_t branching = 200;
  std::size_t sample_count = 50;
  std::size_t batches = 10;
  syntax::Metric metric = syntax::Metric::OperatorTotal;
  std::uint64_t seed = 0;

  /// Throws ConfigError.
  void validate() const;

  bool operator==(const GenerationConfig&) const = default;
};

struct DerivationNode {
  std::vector<Symbol> form;
  std::size_t depth = 0;
  std::optional<std::size_t> applied_rule;
  std::optional<std::size_t> parent;  // index into DerivationTree::nodes
};

/// Nodes kept by the random walk: the root, every sampled frontier node and every leaf.
/// Unsampled interior children are dropped as soon as their level is done.
struct DerivationTree {
  std::vector<DerivationNode> nodes;
  std::vector<std::size_t> leaves;  // distinct sentential forms, in discovery order

  const DerivationNode& leaf(std::size_t i) const { return nodes[leaves[i]]; }
};

bool is_terminal_form(const Grammar& g, std::span<const Symbol> form);

/// Random walk of the grammar: at each level d = 1..depth, up to `branching` nodes of
/// level d-1 are sampled without replacement and each is expanded at its leftmost
/// nonterminal by up to `branching` distinct rules. Terminal children become leaves.
/// Throws EmptyFrontier when no leaf is reached.
DerivationTree grow_tree(const Grammar& g, const GenerationConfig& config, Rng& rng);

/// Rule indices applied from the root to `node`.
std::vector<std::size_t> derivation_of(const DerivationTree& tree, std::size_t node);

}  // namespace formaltrip::grammar
