#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace formaltrip::syntax {

struct FolTerm {
  enum class Kind { Constant, Variable };

  Kind kind = Kind::Constant;
  std::string name;

  bool operator==(const FolTerm&) const = default;
};

enum class Quantifier { Forall, Exists };

/// Node of a first-order formula. Quantifier nodes only occur inside a matrix when the
/// source text was not in prenex form.
struct FolNode {
  enum class Kind { Atom, Not, And, Or, Forall, Exists };

  Kind kind = Kind::Atom;
  std::string predicate;              // Atom
  std::vector<FolTerm> terms;         // Atom
  std::vector<std::string> variables; // Forall / Exists
  std::vector<FolNode> children;      // Not, quantifiers: 1; And/Or: >= 2

  static FolNode atom(std::string predicate, std::vector<FolTerm> terms);
  static FolNode negation(FolNode child);
  static FolNode conjunction(std::vector<FolNode> children);
  static FolNode disjunction(std::vector<FolNode> children);
  static FolNode quantified(Quantifier q, std::vector<std::string> variables, FolNode body);

  bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }

  bool operator==(const FolNode&) const = default;
};

struct QuantifierBlock {
  Quantifier quantifier = Quantifier::Forall;
  std::vector<std::string> variables;

  bool operator==(const QuantifierBlock&) const = default;
};

/// Quantifier prefix followed by a matrix. Parsing peels the leading quantifiers of the
/// text into `prefix`; anything nested deeper stays in the matrix.
struct FolFormula {
  std::vector<QuantifierBlock> prefix;
  FolNode matrix;

  /// True when the matrix contains no quantifier.
  bool prenex() const;

  bool operator==(const FolFormula&) const = default;
};

/// Parses first-order text such as "∀ x1. pred3(p5, x1)". Terms are variables iff bound by
/// an enclosing quantifier. Quantifier spellings: ∀ ∃ all forall exists. Throws
/// SyntaxError (including for = and ≠) or ArityError.
FolFormula parse_fol(std::string_view text);

std::string print_fol(const FolFormula& f);

/// The formula as a single tree with the prefix re-attached.
FolNode fol_tree(const FolFormula& f);

/// Splits leading quantifiers of a tree into a prefix.
FolFormula fol_from_tree(FolNode tree);

/// Predicate name to arity, in name order.
std::map<std::string, std::size_t> fol_predicates(const FolFormula& f);

/// Names of constants in order of first occurrence.
std::vector<std::string> fol_constants(const FolFormula& f);

/// Every term name appearing in an atom (constants and variables), first-occurrence order.
std::vector<std::string> fol_atom_terms(const FolFormula& f);

/// Bound variable names in order of first binding.
std::vector<std::string> fol_bound_variables(const FolFormula& f);

/// Re-derives Variable/Constant classification of every term from lexical scope.
void classify_terms(FolNode& node);

}  // namespace formaltrip::syntax
