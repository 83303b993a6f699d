#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "formaltrip/common/error.hpp"
#include "verify/fol_internal.hpp"

namespace formaltrip::verify {

void ProverBudget::validate() const {
  if (max_clauses == 0) throw ConfigError("max_clauses must be positive");
  if (!(max_seconds > 0.0)) throw ConfigError("max_seconds must be positive");
  if (max_model_domain == 0) throw ConfigError("max_model_domain must be positive");
}

namespace {

// Symbols are interned; variables are negative: -(index + 1).
struct T {
  int sym = 0;
  std::vector<T> args;

  bool is_var() const { return sym < 0; }
  bool operator==(const T&) const = default;
  bool operator<(const T& o) const {
    if (sym != o.sym) return sym < o.sym;
    return args < o.args;
  }
};

struct L {
  bool positive = true;
  int pred = 0;
  std::vector<T> args;

  bool operator==(const L&) const = default;
  bool operator<(const L& o) const {
    if (pred != o.pred) return pred < o.pred;
    if (positive != o.positive) return positive < o.positive;
    return args < o.args;
  }
};

struct C {
  std::vector<L> lits;
  std::size_t weight = 0;
  std::size_t age = 0;
  int vars = 0;
};

using Subst = std::unordered_map<int, T>;

const T& deref(const T& t, const Subst& s) {
  const T* cur = &t;
  while (cur->is_var()) {
    auto it = s.find(cur->sym);
    if (it == s.end()) break;
    cur = &it->second;
  }
  return *cur;
}

bool occurs(int var, const T& t, const Subst& s) {
  const T& d = deref(t, s);
  if (d.is_var()) return d.sym == var;
  return std::any_of(d.args.begin(), d.args.end(),
                     [&](const T& a) { return occurs(var, a, s); });
}

bool unify(const T& a, const T& b, Subst& s) {
  const T& x = deref(a, s);
  const T& y = deref(b, s);
  if (x.is_var() && y.is_var() && x.sym == y.sym) return true;
  if (x.is_var()) {
    if (occurs(x.sym, y, s)) return false;
    s[x.sym] = y;
    return true;
  }
  if (y.is_var()) {
    if (occurs(y.sym, x, s)) return false;
    s[y.sym] = x;
    return true;
  }
  if (x.sym != y.sym || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (!unify(x.args[i], y.args[i], s)) return false;
  }
  return true;
}

bool unify_args(const std::vector<T>& a, const std::vector<T>& b, Subst& s) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!unify(a[i], b[i], s)) return false;
  }
  return true;
}

T instantiate(const T& t, const Subst& s) {
  const T& d = deref(t, s);
  if (d.is_var()) return d;
  T out{d.sym, {}};
  out.args.reserve(d.args.size());
  for (const auto& a : d.args) out.args.push_back(instantiate(a, s));
  return out;
}

L instantiate(const L& l, const Subst& s) {
  L out{l.positive, l.pred, {}};
  for (const auto& a : l.args) out.args.push_back(instantiate(a, s));
  return out;
}

void shift(T& t, int offset) {
  if (t.is_var()) {
    t.sym -= offset;
    return;
  }
  for (auto& a : t.args) shift(a, offset);
}

std::size_t term_weight(const T& t) {
  std::size_t w = 1;
  for (const auto& a : t.args) w += term_weight(a);
  return w;
}

void renumber(T& t, std::map<int, int>& map) {
  if (t.is_var()) {
    auto [it, fresh] = map.emplace(t.sym, -static_cast<int>(map.size()) - 1);
    t.sym = it->second;
    return;
  }
  for (auto& a : t.args) renumber(a, map);
}

/// Variables renumbered by first occurrence, duplicate literals dropped, literal order
/// fixed, so equal clauses compare equal. Returns false for tautologies.
bool normalize(C& c) {
  std::vector<L> lits;
  for (auto& l : c.lits) {
    if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(std::move(l));
  }
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i].pred == lits[j].pred && lits[i].positive != lits[j].positive &&
          lits[i].args == lits[j].args) {
        return false;
      }
    }
  }
  // Order by a variable-blind key first so renumbering is stable across variants.
  auto blind = [](const L& l) {
    L k = l;
    std::function<void(T&)> wipe = [&](T& t) {
      if (t.is_var()) t.sym = -1;
      for (auto& a : t.args) wipe(a);
    };
    for (auto& a : k.args) wipe(a);
    return k;
  };
  std::stable_sort(lits.begin(), lits.end(),
                   [&](const L& a, const L& b) { return blind(a) < blind(b); });
  std::map<int, int> map;
  for (auto& l : lits) {
    for (auto& a : l.args) renumber(a, map);
  }
  c.lits = std::move(lits);
  c.vars = static_cast<int>(map.size());
  c.weight = 0;
  for (const auto& l : c.lits) {
    c.weight += 1;
    for (const auto& a : l.args) c.weight += term_weight(a);
  }
  return true;
}

// One-way matching: binds variables of the pattern only.
bool match(const T& pattern, const T& target, Subst& s) {
  if (pattern.is_var()) {
    auto it = s.find(pattern.sym);
    if (it != s.end()) return it->second == target;
    s[pattern.sym] = target;
    return true;
  }
  if (pattern.sym != target.sym || pattern.args.size() != target.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match(pattern.args[i], target.args[i], s)) return false;
  }
  return true;
}

bool subsumes_from(const std::vector<L>& d, std::size_t i, const std::vector<L>& c,
                   const Subst& s) {
  if (i == d.size()) return true;
  for (const auto& target : c) {
    if (target.pred != d[i].pred || target.positive != d[i].positive) continue;
    Subst next = s;
    bool ok = true;
    for (std::size_t k = 0; ok && k < target.args.size(); ++k) {
      ok = match(d[i].args[k], target.args[k], next);
    }
    if (ok && subsumes_from(d, i + 1, c, next)) return true;
  }
  return false;
}

/// D subsumes C when some substitution maps every literal of D into C. Variables of C
/// are offset so the two clauses share none.
bool subsumes(const C& d, const C& c) {
  if (d.lits.size() > c.lits.size()) return false;
  C shifted = c;
  for (auto& l : shifted.lits) {
    for (auto& a : l.args) shift(a, d.vars);
  }
  return subsumes_from(d.lits, 0, shifted.lits, {});
}

class Prover {
 public:
  explicit Prover(const ProverBudget& budget)
      : budget_(budget),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(budget.max_seconds))) {}

  Refutation run(const std::vector<Clause>& input) {
    for (const auto& c : input) {
      C ic = intern(c);
      if (ic.lits.empty()) return Refutation::Refuted;
      offer(std::move(ic));
    }
    std::size_t picks = 0;
    while (!sos_.empty()) {
      if (std::chrono::steady_clock::now() >= deadline_) return Refutation::BudgetExceeded;
      const std::size_t pick = select(++picks % 5 == 0);
      C given = std::move(sos_[pick]);
      sos_.erase(sos_.begin() + static_cast<std::ptrdiff_t>(pick));
      if (subsumed_by_any(given, usable_)) continue;
      usable_.push_back(given);

      std::vector<C> fresh;
      factor(given, fresh);
      for (const auto& other : usable_) resolve(given, other, fresh);
      for (auto& r : fresh) {
        if (r.lits.empty()) return Refutation::Refuted;
        offer(std::move(r));
        if (kept_ > budget_.max_clauses) return Refutation::BudgetExceeded;
      }
    }
    return Refutation::Saturated;
  }

 private:
  int symbol(const std::string& name) {
    auto [it, fresh] = symbols_.emplace(name, static_cast<int>(symbols_.size()));
    return it->second;
  }

  T intern(const Term& t, std::map<std::string, int>& vars) {
    if (t.kind == Term::Kind::Variable) {
      auto [it, fresh] = vars.emplace(t.name, -static_cast<int>(vars.size()) - 1);
      return T{it->second, {}};
    }
    T out{symbol(t.name), {}};
    for (const auto& a : t.args) out.args.push_back(intern(a, vars));
    return out;
  }

  C intern(const Clause& c) {
    C out;
    std::map<std::string, int> vars;
    for (const auto& l : c.literals) {
      L il{l.positive, symbol("$" + l.predicate + "/" + std::to_string(l.args.size())), {}};
      for (const auto& a : l.args) il.args.push_back(intern(a, vars));
      out.lits.push_back(std::move(il));
    }
    return out;
  }

  bool subsumed_by_any(const C& c, const std::vector<C>& set) const {
    return std::any_of(set.begin(), set.end(), [&](const C& d) { return subsumes(d, c); });
  }

  bool offer(C c) {
    if (!normalize(c)) return false;
    if (subsumed_by_any(c, usable_) || subsumed_by_any(c, sos_)) return false;
    c.age = ++kept_;
    sos_.push_back(std::move(c));
    return true;
  }

  std::size_t select(bool by_age) const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < sos_.size(); ++i) {
      const auto& a = sos_[i];
      const auto& b = sos_[best];
      const bool better = by_age ? a.age < b.age
                                 : (a.weight < b.weight || (a.weight == b.weight && a.age < b.age));
      if (better) best = i;
    }
    return best;
  }

  void factor(const C& c, std::vector<C>& out) const {
    for (std::size_t i = 0; i < c.lits.size(); ++i) {
      for (std::size_t j = i + 1; j < c.lits.size(); ++j) {
        if (c.lits[i].pred != c.lits[j].pred || c.lits[i].positive != c.lits[j].positive) {
          continue;
        }
        Subst s;
        if (!unify_args(c.lits[i].args, c.lits[j].args, s)) continue;
        C f;
        for (std::size_t k = 0; k < c.lits.size(); ++k) {
          if (k != j) f.lits.push_back(instantiate(c.lits[k], s));
        }
        out.push_back(std::move(f));
      }
    }
  }

  void resolve(const C& a, const C& b_in, std::vector<C>& out) const {
    C b = b_in;
    for (auto& l : b.lits) {
      for (auto& t : l.args) shift(t, a.vars);
    }
    for (std::size_t i = 0; i < a.lits.size(); ++i) {
      for (std::size_t j = 0; j < b.lits.size(); ++j) {
        if (a.lits[i].pred != b.lits[j].pred || a.lits[i].positive == b.lits[j].positive) {
          continue;
        }
        Subst s;
        if (!unify_args(a.lits[i].args, b.lits[j].args, s)) continue;
        C r;
        for (std::size_t k = 0; k < a.lits.size(); ++k) {
          if (k != i) r.lits.push_back(instantiate(a.lits[k], s));
        }
        for (std::size_t k = 0; k < b.lits.size(); ++k) {
          if (k != j) r.lits.push_back(instantiate(b.lits[k], s));
        }
        out.push_back(std::move(r));
      }
    }
  }

  const ProverBudget& budget_;
  std::chrono::steady_clock::time_point deadline_;
  std::map<std::string, int> symbols_;
  std::vector<C> usable_;
  std::vector<C> sos_;
  std::size_t kept_ = 0;
};

}  // namespace

Refutation resolution_refute(const std::vector<Clause>& clauses, const ProverBudget& budget) {
  budget.validate();
  return Prover(budget).run(clauses);
}

}  // namespace formaltrip::verify
