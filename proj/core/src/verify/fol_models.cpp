#include <algorithm>
#include <chrono>
#include <map>

#include "formaltrip/common/error.hpp"
#include "formaltrip/sat/solver.hpp"
#include "verify/fol_internal.hpp"
#include "verify/fol_search.hpp"

namespace formaltrip::verify {

namespace detail {

namespace {

using Clock = std::chrono::steady_clock;

sat::Solver::Limits limits_until(Clock::time_point deadline) {
  sat::Solver::Limits limits;
  limits.deadline = deadline;
  return limits;
}

/// Encodes formulas over a domain of fixed size; constants are unknown elements.
class DomainEncoder {
 public:
  DomainEncoder(std::size_t size, const std::vector<std::string>& constants)
      : cnf_(solver_), size_(size), constants_(constants) {
    for (std::size_t i = 0; i < constants.size(); ++i) {
      std::vector<int> options;
      const std::size_t limit = std::min(i + 1, size);
      for (std::size_t e = 0; e < limit; ++e) options.push_back(cnf_.fresh());
      solver_.add_clause(options);
      for (std::size_t a = 0; a < options.size(); ++a) {
        for (std::size_t b = a + 1; b < options.size(); ++b) {
          solver_.add_clause({-options[a], -options[b]});
        }
      }
      element_of_[constants[i]] = std::move(options);
    }
  }

  int encode(const Fm& f, std::map<std::string, std::size_t>& env) {
    switch (f.kind) {
      case Fm::Kind::Atom:
        return atom(f, env);
      case Fm::Kind::Not:
        return -encode(f.kids[0], env);
      case Fm::Kind::And:
      case Fm::Kind::Or: {
        std::vector<int> lits;
        for (const auto& k : f.kids) lits.push_back(encode(k, env));
        return f.kind == Fm::Kind::And ? cnf_.and_of(lits) : cnf_.or_of(lits);
      }
      case Fm::Kind::Forall:
      case Fm::Kind::Exists: {
        if (!free_variables(f.kids[0]).count(f.var)) return encode(f.kids[0], env);
        std::vector<int> lits;
        for (std::size_t e = 0; e < size_; ++e) {
          env[f.var] = e;
          lits.push_back(encode(f.kids[0], env));
        }
        env.erase(f.var);
        return f.kind == Fm::Kind::Forall ? cnf_.and_of(lits) : cnf_.or_of(lits);
      }
    }
    return 0;
  }

  sat::Solver& solver() { return solver_; }
  void require(int lit) { cnf_.require(lit); }

  FiniteModel model(const std::map<std::string, std::size_t>& arities) const {
    FiniteModel m;
    m.domain_size = size_;
    for (const auto& [c, options] : element_of_) {
      for (std::size_t e = 0; e < options.size(); ++e) {
        if (solver_.model_value(options[e])) m.constants[c] = e;
      }
    }
    m.arities = arities;
    for (const auto& [key, var] : atoms_) {
      if (solver_.model_value(var)) m.relations[key.first].insert(key.second);
    }
    return m;
  }

 private:
  int atom_var(const std::string& pred, const std::vector<std::size_t>& tuple) {
    auto [it, fresh] = atoms_.emplace(std::make_pair(pred, tuple), 0);
    if (fresh) it->second = cnf_.fresh();
    return it->second;
  }

  int atom(const Fm& f, const std::map<std::string, std::size_t>& env) {
    std::vector<std::string> open;
    for (const auto& t : f.args) {
      if (!t.variable && std::find(open.begin(), open.end(), t.name) == open.end()) {
        open.push_back(t.name);
      }
    }
    std::vector<std::size_t> choice(open.size(), 0);
    std::vector<int> cases;
    while (true) {
      std::vector<std::size_t> tuple;
      std::vector<int> guard;
      for (const auto& t : f.args) {
        if (t.variable) {
          tuple.push_back(env.at(t.name));
        } else {
          const auto k = static_cast<std::size_t>(
              std::find(open.begin(), open.end(), t.name) - open.begin());
          tuple.push_back(choice[k]);
        }
      }
      for (std::size_t k = 0; k < open.size(); ++k) {
        guard.push_back(element_of_.at(open[k])[choice[k]]);
      }
      guard.push_back(atom_var(f.pred, tuple));
      cases.push_back(cnf_.and_of(guard));
      std::size_t k = 0;
      for (; k < open.size(); ++k) {
        if (++choice[k] < element_of_.at(open[k]).size()) break;
        choice[k] = 0;
      }
      if (k == open.size()) break;
    }
    return cnf_.or_of(cases);
  }

  sat::Solver solver_;
  sat::CnfBuilder cnf_;
  std::size_t size_;
  std::vector<std::string> constants_;
  std::map<std::string, std::vector<int>> element_of_;
  std::map<std::pair<std::string, std::vector<std::size_t>>, int> atoms_;
};

/// Grounds a Skolemized formula over a finite Herbrand universe.
class HerbrandEncoder {
 public:
  explicit HerbrandEncoder(std::vector<std::string> universe)
      : cnf_(solver_), universe_(std::move(universe)) {}

  int encode(const Fm& f, std::map<std::string, std::string>& env) {
    switch (f.kind) {
      case Fm::Kind::Atom: {
        std::vector<std::string> args;
        for (const auto& t : f.args) args.push_back(t.variable ? env.at(t.name) : t.name);
        auto [it, fresh] = atoms_.emplace(std::make_pair(f.pred, args), 0);
        if (fresh) it->second = cnf_.fresh();
        return it->second;
      }
      case Fm::Kind::Not:
        return -encode(f.kids[0], env);
      case Fm::Kind::And:
      case Fm::Kind::Or: {
        std::vector<int> lits;
        for (const auto& k : f.kids) lits.push_back(encode(k, env));
        return f.kind == Fm::Kind::And ? cnf_.and_of(lits) : cnf_.or_of(lits);
      }
      case Fm::Kind::Forall:
      case Fm::Kind::Exists: {
        if (!free_variables(f.kids[0]).count(f.var)) return encode(f.kids[0], env);
        std::vector<int> lits;
        for (const auto& h : universe_) {
          env[f.var] = h;
          lits.push_back(encode(f.kids[0], env));
        }
        env.erase(f.var);
        return f.kind == Fm::Kind::Forall ? cnf_.and_of(lits) : cnf_.or_of(lits);
      }
    }
    return 0;
  }

  sat::Solver& solver() { return solver_; }
  void require(int lit) { cnf_.require(lit); }

  FiniteModel model(const std::map<std::string, std::size_t>& arities,
                    const std::set<std::string>& named) const {
    FiniteModel m;
    m.domain_size = universe_.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < universe_.size(); ++i) index[universe_[i]] = i;
    for (const auto& c : named) m.constants[c] = index.at(c);
    m.arities = arities;
    for (const auto& [key, var] : atoms_) {
      if (!arities.count(key.first) || !solver_.model_value(var)) continue;
      std::vector<std::size_t> tuple;
      for (const auto& a : key.second) tuple.push_back(index.at(a));
      m.relations[key.first].insert(std::move(tuple));
    }
    return m;
  }

 private:
  sat::Solver solver_;
  sat::CnfBuilder cnf_;
  std::vector<std::string> universe_;
  std::map<std::pair<std::string, std::vector<std::string>>, int> atoms_;
};

}  // namespace

std::optional<FiniteModel> search_models(const Fm& f, const Fm& g,
                                         const std::map<std::string, std::size_t>& arities,
                                         std::size_t max_domain, Clock::time_point deadline) {
  std::set<std::string> constant_set;
  collect_constants(f, constant_set);
  collect_constants(g, constant_set);
  const std::vector<std::string> constants(constant_set.begin(), constant_set.end());
  for (std::size_t k = 1; k <= max_domain; ++k) {
    for (int direction = 0; direction < 2; ++direction) {
      if (Clock::now() >= deadline) return std::nullopt;
      DomainEncoder enc(k, constants);
      std::map<std::string, std::size_t> env;
      const int a = enc.encode(direction == 0 ? f : g, env);
      const int b = enc.encode(direction == 0 ? g : f, env);
      enc.require(a);
      enc.require(-b);
      const auto result = enc.solver().solve(limits_until(deadline));
      if (result == sat::Solver::Result::Sat) return enc.model(arities);
      if (result == sat::Solver::Result::Unknown) return std::nullopt;
    }
  }
  return std::nullopt;
}

GroundResult decide_by_grounding(const Skolemized& phi, const std::set<std::string>& named,
                                 const std::map<std::string, std::size_t>& arities,
                                 Clock::time_point deadline) {
  std::set<std::string> universe_set;
  collect_constants(phi.formula, universe_set);
  universe_set.insert(named.begin(), named.end());
  if (universe_set.empty()) universe_set.insert("$c");
  HerbrandEncoder enc(std::vector<std::string>(universe_set.begin(), universe_set.end()));
  std::map<std::string, std::string> env;
  enc.require(enc.encode(phi.formula, env));
  const auto result = enc.solver().solve(limits_until(deadline));
  GroundResult out;
  if (result == sat::Solver::Result::Unsat) {
    out.status = GroundResult::Status::Unsat;
  } else if (result == sat::Solver::Result::Sat) {
    out.status = GroundResult::Status::Sat;
    out.model = enc.model(arities, named);
  }
  return out;
}

}  // namespace detail

std::optional<FiniteModel> find_countermodel(const syntax::FolFormula& f,
                                             const syntax::FolFormula& g,
                                             const ProverBudget& budget) {
  budget.validate();
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(budget.max_seconds));
  detail::NameSupply names;
  names.reserve_all(f);
  names.reserve_all(g);
  const detail::Fm ff = detail::from_formula(f, names);
  const detail::Fm gg = detail::from_formula(g, names);
  std::map<std::string, std::size_t> arities;
  detail::collect_predicates(ff, arities);
  detail::collect_predicates(gg, arities);
  return detail::search_models(ff, gg, arities, budget.max_model_domain, deadline);
}

}  // namespace formaltrip::verify
