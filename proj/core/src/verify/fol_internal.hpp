#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "formaltrip/syntax/fol.hpp"
#include "formaltrip/verify/fol.hpp"

namespace formaltrip::verify::detail {

struct FTerm {
  bool variable = false;
  std::string name;
  std::vector<FTerm> args;  // Skolem function arguments

  bool operator==(const FTerm&) const = default;
  bool operator<(const FTerm& o) const {
    if (variable != o.variable) return variable < o.variable;
    if (name != o.name) return name < o.name;
    return args < o.args;
  }
};

/// Working formula: single-variable quantifiers, bound names unique per formula.
struct Fm {
  enum class Kind { Atom, Not, And, Or, Forall, Exists };

  Kind kind = Kind::Atom;
  std::string pred;
  std::vector<FTerm> args;
  std::string var;
  std::vector<Fm> kids;

  static Fm atom(std::string pred, std::vector<FTerm> args);
  static Fm negation(Fm f);
  static Fm junction(Kind kind, std::vector<Fm> kids);
  static Fm quantified(Kind kind, std::string var, Fm body);
};

/// Hands out names that collide with nothing already registered.
class NameSupply {
 public:
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve_all(const syntax::FolFormula& f);
  bool taken(const std::string& name) const { return used_.count(name) > 0; }
  /// `base` itself when free, otherwise base_1, base_2, ...
  std::string fresh(const std::string& base);
  /// prefix0, prefix1, ... continuing from the last number handed out for `prefix`.
  std::string numbered(const std::string& prefix);

 private:
  std::set<std::string> used_;
  std::map<std::string, std::size_t> counters_;
};

/// Converts a parsed formula, renaming bound variables apart.
Fm from_formula(const syntax::FolFormula& f, NameSupply& names);

Fm nnf(const Fm& f, bool negate = false);

struct Skolemized {
  Fm formula;  // NNF without existentials; universals kept
  std::size_t max_skolem_arity = 0;
  std::vector<std::string> skolem_constants;
};

/// Inner Skolemization of an NNF formula: an existential becomes a Skolem term over the
/// enclosing universals that occur free in its body.
Skolemized skolemize(const Fm& f, NameSupply& names);

std::set<std::string> free_variables(const Fm& f);
void collect_constants(const Fm& f, std::set<std::string>& out);
void collect_predicates(const Fm& f, std::map<std::string, std::size_t>& out);

/// CNF of a Skolemized formula, standardized apart.
std::vector<Clause> clauses_of(const Fm& skolemized, NameSupply& names);

}  // namespace formaltrip::verify::detail
