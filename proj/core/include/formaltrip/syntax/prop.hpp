#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace formaltrip::syntax {

/// Propositional formula. And/Or nodes are n-ary with at least two children;
/// the parser flattens nested nodes of the same kind.
struct PropFormula {
  enum class Kind { Proposition, Not, And, Or };

  Kind kind = Kind::Proposition;
  std::string name;                  // Proposition only
  std::vector<PropFormula> children; // Not: 1, And/Or: >= 2

  static PropFormula proposition(std::string name);
  static PropFormula negation(PropFormula child);
  static PropFormula conjunction(std::vector<PropFormula> children);
  static PropFormula disjunction(std::vector<PropFormula> children);

  bool operator==(const PropFormula&) const = default;
};

/// Parses propositional text. Accepts the glyphs ¬ ∧ ∨, the ASCII forms ~ ! & | and the
/// words not/and/or. Precedence is ¬ over ∧ over ∨. Throws SyntaxError.
PropFormula parse_prop(std::string_view text);

/// Fully parenthesized canonical form, e.g. "(p5 ∨ ¬p12 ∨ ¬p4)".
std::string print_prop(const PropFormula& f);

/// Distinct proposition names in order of first occurrence.
std::vector<std::string> prop_variables(const PropFormula& f);

}  // namespace formaltrip::syntax
