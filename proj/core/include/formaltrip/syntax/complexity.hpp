#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "formaltrip/syntax/expression.hpp"

namespace formaltrip::syntax {

/// Operator counts used to categorize expressions. For regexes `operator_total` counts
/// stars; the DFA fields are filled in by the regex verifier.
struct ComplexityProfile {
  std::size_t operator_total = 0;
  std::size_t and_count = 0;
  std::size_t or_count = 0;
  std::size_t not_count = 0;
  std::size_t star_count = 0;
  std::optional<std::size_t> cfg_depth;
  std::optional<std::size_t> dfa_nodes;
  std::optional<std::size_t> dfa_edges;
  std::optional<double> dfa_density;

  bool operator==(const ComplexityProfile&) const = default;
};

/// An n-ary And/Or with k children counts as k-1 operators, so the count matches the
/// number of operator glyphs in the canonical text.
ComplexityProfile complexity(const FormalExpression& e);

enum class Metric {
  OperatorTotal,
  CfgDepth,
  AndCount,
  OrCount,
  NotCount,
  DfaNodes,
  DfaEdges,
  DfaDensity,
};

std::string_view to_string(Metric m);
/// Accepts the long names and the short forms and/or/not. Throws ConfigError.
Metric metric_from_string(std::string_view s);

bool metric_needs_dfa(Metric m);

/// Value of `m` in the profile; throws Error when the profile lacks it.
double metric_value(const ComplexityProfile& p, Metric m);

}  // namespace formaltrip::syntax
