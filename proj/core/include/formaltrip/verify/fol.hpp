#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "formaltrip/syntax/fol.hpp"
#include "formaltrip/verify/verdict.hpp"

namespace formaltrip::verify {

struct ProverBudget {
  std::size_t max_clauses = 10000;
  double max_seconds = 10.0;
  std::size_t max_model_domain = 4;

  /// Throws ConfigError unless every field is positive.
  void validate() const;
};

struct FolOptions {
  ProverBudget budget;
  /// Treat unbound names shaped like variables (u..z, optionally followed by digits) as
  /// universally quantified instead of as constants.
  bool close_free_variables = true;
};

/// True for names such as x, y2, z10.
bool looks_like_variable(const std::string& name);

/// Prepends ∀ for unbound variable-like names; closed formulas come back unchanged.
syntax::FolFormula universal_closure(const syntax::FolFormula& f);

struct Term {
  enum class Kind { Variable, Constant, Function };

  Kind kind = Kind::Constant;
  std::string name;
  std::vector<Term> args;  // Function only

  bool operator==(const Term&) const = default;
};

struct Literal {
  bool positive = true;
  std::string predicate;
  std::vector<Term> args;

  bool operator==(const Literal&) const = default;
};

struct Clause {
  std::vector<Literal> literals;

  bool operator==(const Clause&) const = default;
};

std::string to_string(const Term& t);
std::string to_string(const Literal& l);
/// "{pred2(x, sk0(x)), ¬pred1(y)}"
std::string to_string(const Clause& c);

/// Negation normal form, inner Skolemization (Skolem symbols sk0, sk1, ... fresh for the
/// call), then conjunctive normal form. Large distributions are avoided by naming
/// subformulas with definition predicates, so the result is equisatisfiable.
std::vector<Clause> clausify(const syntax::FolFormula& f);

enum class Refutation { Refuted, Saturated, BudgetExceeded };

std::string_view to_string(Refutation r);

/// Given-clause binary resolution with factoring, forward subsumption and tautology
/// deletion. Saturated means the clause set is satisfiable.
Refutation resolution_refute(const std::vector<Clause>& clauses, const ProverBudget& budget);

/// Searches domains of size 1..max_model_domain for a model in which exactly one of the
/// closed formulas holds. For each size f ∧ ¬g is tried before g ∧ ¬f. Constants are
/// assigned under symmetry breaking: the i-th constant by name maps to an element <= i.
std::optional<FiniteModel> find_countermodel(const syntax::FolFormula& f,
                                             const syntax::FolFormula& g,
                                             const ProverBudget& budget);

/// Direct recursive evaluation; throws Error for symbols the model does not interpret.
bool evaluate_in_model(const syntax::FolFormula& f, const FiniteModel& m);

/// Both formulas are closed first (if enabled). Then, in order: identical canonical
/// text; finite countermodel search; per direction either exhaustive Herbrand grounding
/// (when Skolemization yields only constants) or resolution. Unknown when neither a
/// refutation nor a satisfiability certificate is reached within the budget.
EquivalenceVerdict equivalent_fol(const syntax::FolFormula& f, const syntax::FolFormula& g,
                                  const FolOptions& options = {});

}  // namespace formaltrip::verify
