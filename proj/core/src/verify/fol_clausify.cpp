#include <algorithm>
#include <functional>

#include "verify/fol_internal.hpp"

namespace formaltrip::verify {

namespace detail {

using syntax::FolFormula;
using syntax::FolNode;
using syntax::FolTerm;

Fm Fm::atom(std::string pred, std::vector<FTerm> args) {
  Fm f;
  f.kind = Kind::Atom;
  f.pred = std::move(pred);
  f.args = std::move(args);
  return f;
}

Fm Fm::negation(Fm child) {
  Fm f;
  f.kind = Kind::Not;
  f.kids.push_back(std::move(child));
  return f;
}

Fm Fm::junction(Kind kind, std::vector<Fm> kids) {
  if (kids.size() == 1) return std::move(kids.front());
  Fm f;
  f.kind = kind;
  f.kids = std::move(kids);
  return f;
}

Fm Fm::quantified(Kind kind, std::string var, Fm body) {
  Fm f;
  f.kind = kind;
  f.var = std::move(var);
  f.kids.push_back(std::move(body));
  return f;
}

void NameSupply::reserve_all(const FolFormula& f) {
  for (const auto& [p, arity] : syntax::fol_predicates(f)) reserve(p);
  for (const auto& c : syntax::fol_constants(f)) reserve(c);
}

std::string NameSupply::fresh(const std::string& base) {
  std::string name = base;
  for (std::size_t i = 1; taken(name); ++i) name = base + "_" + std::to_string(i);
  used_.insert(name);
  return name;
}

std::string NameSupply::numbered(const std::string& prefix) {
  std::size_t& next = counters_[prefix];
  std::string name = prefix + std::to_string(next++);
  while (taken(name)) name = prefix + std::to_string(next++);
  used_.insert(name);
  return name;
}

namespace {

Fm convert(const FolNode& n, std::map<std::string, std::string> scope, NameSupply& names) {
  switch (n.kind) {
    case FolNode::Kind::Atom: {
      std::vector<FTerm> args;
      for (const auto& t : n.terms) {
        auto it = scope.find(t.name);
        if (t.kind == FolTerm::Kind::Variable && it != scope.end()) {
          args.push_back({true, it->second, {}});
        } else {
          args.push_back({false, t.name, {}});
        }
      }
      return Fm::atom(n.predicate, std::move(args));
    }
    case FolNode::Kind::Not:
      return Fm::negation(convert(n.children[0], scope, names));
    case FolNode::Kind::And:
    case FolNode::Kind::Or: {
      std::vector<Fm> kids;
      for (const auto& c : n.children) kids.push_back(convert(c, scope, names));
      return Fm::junction(n.kind == FolNode::Kind::And ? Fm::Kind::And : Fm::Kind::Or,
                          std::move(kids));
    }
    case FolNode::Kind::Forall:
    case FolNode::Kind::Exists: {
      const auto kind = n.kind == FolNode::Kind::Forall ? Fm::Kind::Forall : Fm::Kind::Exists;
      std::vector<std::string> renamed;
      for (const auto& v : n.variables) {
        renamed.push_back(names.fresh(v));
        scope[v] = renamed.back();
      }
      Fm body = convert(n.children[0], scope, names);
      for (auto it = renamed.rbegin(); it != renamed.rend(); ++it) {
        body = Fm::quantified(kind, *it, std::move(body));
      }
      return body;
    }
  }
  return {};
}

void substitute(FTerm& t, const std::string& var, const FTerm& value) {
  if (t.variable && t.name == var) {
    t = value;
    return;
  }
  for (auto& a : t.args) substitute(a, var, value);
}

void substitute(Fm& f, const std::string& var, const FTerm& value) {
  for (auto& a : f.args) substitute(a, var, value);
  for (auto& k : f.kids) substitute(k, var, value);
}

void term_variables(const FTerm& t, std::set<std::string>& out) {
  if (t.variable) out.insert(t.name);
  for (const auto& a : t.args) term_variables(a, out);
}

class Skolemizer {
 public:
  explicit Skolemizer(NameSupply& names) : names_(names) {}

  Fm run(const Fm& f) {
    switch (f.kind) {
      case Fm::Kind::Atom:
        return f;
      case Fm::Kind::Not:
      case Fm::Kind::And:
      case Fm::Kind::Or: {
        Fm out = f;
        for (auto& k : out.kids) k = run(k);
        return out;
      }
      case Fm::Kind::Forall: {
        universals_.push_back(f.var);
        Fm out = Fm::quantified(Fm::Kind::Forall, f.var, run(f.kids[0]));
        universals_.pop_back();
        return out;
      }
      case Fm::Kind::Exists: {
        const auto free = free_variables(f.kids[0]);
        FTerm sk{false, names_.numbered("sk"), {}};
        for (const auto& u : universals_) {
          if (free.count(u)) sk.args.push_back({true, u, {}});
        }
        max_arity_ = std::max(max_arity_, sk.args.size());
        if (sk.args.empty()) constants_.push_back(sk.name);
        Fm body = f.kids[0];
        substitute(body, f.var, sk);
        return run(body);
      }
    }
    return f;
  }

  std::size_t max_arity() const { return max_arity_; }
  std::vector<std::string> constants() const { return constants_; }

 private:
  NameSupply& names_;
  std::vector<std::string> universals_;
  std::size_t max_arity_ = 0;
  std::vector<std::string> constants_;
};

struct LitF {
  bool positive = true;
  std::string pred;
  std::vector<FTerm> args;

  bool operator==(const LitF&) const = default;
};
using ClauseF = std::vector<LitF>;

constexpr std::size_t kProductLimit = 32;

class CnfConverter {
 public:
  explicit CnfConverter(NameSupply& names) : names_(names) {}

  std::vector<ClauseF> run(const Fm& f) {
    switch (f.kind) {
      case Fm::Kind::Atom:
        return {{LitF{true, f.pred, f.args}}};
      case Fm::Kind::Not:
        return {{LitF{false, f.kids[0].pred, f.kids[0].args}}};
      case Fm::Kind::Forall:
      case Fm::Kind::Exists:
        return run(f.kids[0]);
      case Fm::Kind::And: {
        std::vector<ClauseF> out;
        for (const auto& k : f.kids) {
          auto part = run(k);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }
      case Fm::Kind::Or: {
        std::vector<ClauseF> acc = run(f.kids[0]);
        for (std::size_t i = 1; i < f.kids.size(); ++i) {
          std::vector<ClauseF> next = run(f.kids[i]);
          if (acc.size() * next.size() > kProductLimit) {
            if (acc.size() >= next.size()) {
              acc = define(std::move(acc));
            } else {
              next = define(std::move(next));
            }
          }
          std::vector<ClauseF> product;
          for (const auto& a : acc) {
            for (const auto& b : next) {
              ClauseF c = a;
              for (const auto& l : b) {
                if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
              }
              product.push_back(std::move(c));
            }
          }
          acc = std::move(product);
        }
        return acc;
      }
    }
    return {};
  }

  std::vector<ClauseF> take_definitions() { return std::move(definitions_); }

 private:
  std::vector<ClauseF> define(std::vector<ClauseF> set) {
    std::set<std::string> vars;
    for (const auto& c : set) {
      for (const auto& l : c) {
        for (const auto& t : l.args) term_variables(t, vars);
      }
    }
    LitF d{true, names_.numbered("def"), {}};
    for (const auto& v : vars) d.args.push_back({true, v, {}});
    LitF not_d = d;
    not_d.positive = false;
    for (auto& c : set) {
      c.insert(c.begin(), not_d);
      definitions_.push_back(std::move(c));
    }
    return {{d}};
  }

  NameSupply& names_;
  std::vector<ClauseF> definitions_;
};

Term to_public(const FTerm& t, const std::map<std::string, std::string>& rename) {
  Term out;
  if (t.variable) {
    out.kind = Term::Kind::Variable;
    out.name = rename.at(t.name);
  } else {
    out.kind = t.args.empty() ? Term::Kind::Constant : Term::Kind::Function;
    out.name = t.name;
    for (const auto& a : t.args) out.args.push_back(to_public(a, rename));
  }
  return out;
}

}  // namespace

Fm from_formula(const FolFormula& f, NameSupply& names) {
  return convert(syntax::fol_tree(f), {}, names);
}

Fm nnf(const Fm& f, bool negate) {
  switch (f.kind) {
    case Fm::Kind::Atom:
      return negate ? Fm::negation(f) : f;
    case Fm::Kind::Not:
      return nnf(f.kids[0], !negate);
    case Fm::Kind::And:
    case Fm::Kind::Or: {
      Fm::Kind kind = f.kind;
      if (negate) kind = kind == Fm::Kind::And ? Fm::Kind::Or : Fm::Kind::And;
      std::vector<Fm> kids;
      for (const auto& k : f.kids) kids.push_back(nnf(k, negate));
      return Fm::junction(kind, std::move(kids));
    }
    case Fm::Kind::Forall:
    case Fm::Kind::Exists: {
      Fm::Kind kind = f.kind;
      if (negate) kind = kind == Fm::Kind::Forall ? Fm::Kind::Exists : Fm::Kind::Forall;
      return Fm::quantified(kind, f.var, nnf(f.kids[0], negate));
    }
  }
  return f;
}

Skolemized skolemize(const Fm& f, NameSupply& names) {
  Skolemizer s(names);
  Skolemized out;
  out.formula = s.run(f);
  out.max_skolem_arity = s.max_arity();
  out.skolem_constants = s.constants();
  return out;
}

std::set<std::string> free_variables(const Fm& f) {
  std::set<std::string> out;
  if (f.kind == Fm::Kind::Atom) {
    for (const auto& t : f.args) term_variables(t, out);
    return out;
  }
  for (const auto& k : f.kids) {
    auto sub = free_variables(k);
    out.insert(sub.begin(), sub.end());
  }
  if (f.kind == Fm::Kind::Forall || f.kind == Fm::Kind::Exists) out.erase(f.var);
  return out;
}

void collect_constants(const Fm& f, std::set<std::string>& out) {
  std::function<void(const FTerm&)> visit = [&](const FTerm& t) {
    if (!t.variable && t.args.empty()) out.insert(t.name);
    for (const auto& a : t.args) visit(a);
  };
  for (const auto& t : f.args) visit(t);
  for (const auto& k : f.kids) collect_constants(k, out);
}

void collect_predicates(const Fm& f, std::map<std::string, std::size_t>& out) {
  if (f.kind == Fm::Kind::Atom) out.emplace(f.pred, f.args.size());
  for (const auto& k : f.kids) collect_predicates(k, out);
}

}  // namespace detail

std::string to_string(const Term& t) {
  std::string out = t.name;
  if (!t.args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(t.args[i]);
    }
    out += ")";
  }
  return out;
}

std::string to_string(const Literal& l) {
  std::string out = l.positive ? "" : "\xC2\xAC";
  out += l.predicate;
  if (!l.args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(l.args[i]);
    }
    out += ")";
  }
  return out;
}

std::string to_string(const Clause& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i) out += ", ";
    out += to_string(c.literals[i]);
  }
  return out + "}";
}

namespace detail {

std::vector<Clause> clauses_of(const Fm& skolemized, NameSupply& names) {
  CnfConverter cnf(names);
  std::vector<ClauseF> clauses = cnf.run(skolemized);
  for (auto& d : cnf.take_definitions()) clauses.push_back(std::move(d));

  // Standardize apart: a variable name already claimed by an earlier clause gets a suffix.
  std::set<std::string> claimed;
  std::vector<Clause> out;
  for (const auto& c : clauses) {
    std::map<std::string, std::string> rename;
    std::set<std::string> vars;
    Clause pc;
    for (const auto& l : c) {
      for (const auto& t : l.args) term_variables(t, vars);
    }
    for (const auto& v : vars) {
      std::string name = v;
      for (std::size_t i = 1; claimed.count(name) || (name != v && names.taken(name)); ++i) {
        name = v + "_" + std::to_string(i);
      }
      claimed.insert(name);
      rename[v] = name;
    }
    for (const auto& l : c) {
      Literal pl;
      pl.positive = l.positive;
      pl.predicate = l.pred;
      for (const auto& t : l.args) pl.args.push_back(to_public(t, rename));
      if (std::find(pc.literals.begin(), pc.literals.end(), pl) == pc.literals.end()) {
        pc.literals.push_back(std::move(pl));
      }
    }
    out.push_back(std::move(pc));
  }
  return out;
}

}  // namespace detail

std::vector<Clause> clausify(const syntax::FolFormula& f) {
  using namespace detail;
  NameSupply names;
  names.reserve_all(f);
  return clauses_of(skolemize(nnf(from_formula(f, names)), names).formula, names);
}

std::string_view to_string(Refutation r) {
  switch (r) {
    case Refutation::Refuted:
      return "refuted";
    case Refutation::Saturated:
      return "saturated";
    case Refutation::BudgetExceeded:
      return "budget_exceeded";
  }
  return "budget_exceeded";
}

}  // namespace formaltrip::verify
