#include "formaltrip/verify/fol.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>
#include <optional>

#include "formaltrip/common/error.hpp"
#include "verify/fol_internal.hpp"
#include "verify/fol_search.hpp"

namespace formaltrip::verify {

using syntax::FolFormula;
using syntax::FolNode;
using syntax::FolTerm;

bool looks_like_variable(const std::string& name) {
  if (name.empty() || name[0] < 'u' || name[0] > 'z') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

FolFormula universal_closure(const FolFormula& f) {
  std::vector<std::string> free;
  for (const auto& c : syntax::fol_constants(f)) {
    if (looks_like_variable(c)) free.push_back(c);
  }
  if (free.empty()) return f;
  FolNode tree = FolNode::quantified(syntax::Quantifier::Forall, free, syntax::fol_tree(f));
  syntax::classify_terms(tree);
  return syntax::fol_from_tree(std::move(tree));
}

namespace {

using Env = std::map<std::string, std::size_t>;

bool eval(const FolNode& n, const FiniteModel& m, Env& env) {
  switch (n.kind) {
    case FolNode::Kind::Atom: {
      std::vector<std::size_t> tuple;
      for (const auto& t : n.terms) {
        auto bound = env.find(t.name);
        if (t.kind == FolTerm::Kind::Variable && bound != env.end()) {
          tuple.push_back(bound->second);
          continue;
        }
        auto c = m.constants.find(t.name);
        if (c == m.constants.end()) throw Error("model does not interpret '" + t.name + "'");
        tuple.push_back(c->second);
      }
      return m.holds(n.predicate, tuple);
    }
    case FolNode::Kind::Not:
      return !eval(n.children[0], m, env);
    case FolNode::Kind::And:
      return std::all_of(n.children.begin(), n.children.end(),
                         [&](const FolNode& c) { return eval(c, m, env); });
    case FolNode::Kind::Or:
      return std::any_of(n.children.begin(), n.children.end(),
                         [&](const FolNode& c) { return eval(c, m, env); });
    case FolNode::Kind::Forall:
    case FolNode::Kind::Exists: {
      const bool universal = n.kind == FolNode::Kind::Forall;
      // Expand the block one variable at a time, restoring shadowed bindings afterwards.
      std::function<bool(std::size_t)> expand = [&](std::size_t i) -> bool {
        if (i == n.variables.size()) return eval(n.children[0], m, env);
        const std::string& v = n.variables[i];
        const auto saved = env.find(v) != env.end() ? std::optional(env[v]) : std::nullopt;
        bool result = universal;
        for (std::size_t e = 0; e < m.domain_size; ++e) {
          env[v] = e;
          const bool r = expand(i + 1);
          if (universal && !r) {
            result = false;
            break;
          }
          if (!universal && r) {
            result = true;
            break;
          }
        }
        if (saved) {
          env[v] = *saved;
        } else {
          env.erase(v);
        }
        return result;
      };
      return expand(0);
    }
  }
  return false;
}

using Clock = std::chrono::steady_clock;

double seconds_left(Clock::time_point deadline) {
  return std::chrono::duration<double>(deadline - Clock::now()).count();
}

enum class Direction { Unsat, Sat, Unknown };

struct DirectionResult {
  Direction outcome = Direction::Unknown;
  std::optional<FiniteModel> model;
  std::string how;
};

// Satisfiability of a ∧ ¬b.
DirectionResult decide_direction(const FolFormula& a, const FolFormula& b,
                                 const ProverBudget& budget, Clock::time_point deadline) {
  detail::NameSupply names;
  names.reserve_all(a);
  names.reserve_all(b);
  detail::Fm fa = detail::from_formula(a, names);
  detail::Fm fb = detail::from_formula(b, names);
  std::map<std::string, std::size_t> arities;
  detail::collect_predicates(fa, arities);
  detail::collect_predicates(fb, arities);
  std::set<std::string> named;
  detail::collect_constants(fa, named);
  detail::collect_constants(fb, named);

  const detail::Fm phi =
      detail::Fm::junction(detail::Fm::Kind::And, {std::move(fa), detail::Fm::negation(fb)});
  const detail::Skolemized sk = detail::skolemize(detail::nnf(phi), names);

  DirectionResult out;
  if (sk.max_skolem_arity == 0) {
    auto g = detail::decide_by_grounding(sk, named, arities, deadline);
    out.how = "herbrand grounding";
    if (g.status == detail::GroundResult::Status::Unsat) out.outcome = Direction::Unsat;
    if (g.status == detail::GroundResult::Status::Sat) {
      out.outcome = Direction::Sat;
      out.model = std::move(g.model);
    }
    return out;
  }
  const double left = seconds_left(deadline);
  if (left <= 0.0) return out;
  ProverBudget remaining = budget;
  remaining.max_seconds = left;
  out.how = "resolution";
  switch (resolution_refute(detail::clauses_of(sk.formula, names), remaining)) {
    case Refutation::Refuted:
      out.outcome = Direction::Unsat;
      break;
    case Refutation::Saturated:
      out.outcome = Direction::Sat;
      break;
    case Refutation::BudgetExceeded:
      break;
  }
  return out;
}

}  // namespace

bool evaluate_in_model(const FolFormula& f, const FiniteModel& m) {
  Env env;
  return eval(syntax::fol_tree(f), m, env);
}

EquivalenceVerdict equivalent_fol(const FolFormula& f, const FolFormula& g,
                                  const FolOptions& options) {
  options.budget.validate();
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(
                                               options.budget.max_seconds));
  const FolFormula cf = options.close_free_variables ? universal_closure(f) : f;
  const FolFormula cg = options.close_free_variables ? universal_closure(g) : g;
  if (syntax::print_fol(cf) == syntax::print_fol(cg)) {
    return {Status::Equivalent, {}, "identical canonical form"};
  }

  {
    ProverBudget search = options.budget;
    search.max_seconds = std::max(seconds_left(deadline), 1e-3);
    if (auto model = find_countermodel(cf, cg, search)) {
      return {Status::NotEquivalent, std::move(*model),
              "countermodel with domain size " + std::to_string(model->domain_size)};
    }
  }

  const DirectionResult forward = decide_direction(cf, cg, options.budget, deadline);
  if (forward.outcome == Direction::Sat) {
    EquivalenceVerdict v{Status::NotEquivalent, {}, "first formula does not entail the second (" +
                                                        forward.how + ")"};
    if (forward.model) v.witness = *forward.model;
    return v;
  }
  const DirectionResult backward = decide_direction(cg, cf, options.budget, deadline);
  if (backward.outcome == Direction::Sat) {
    EquivalenceVerdict v{Status::NotEquivalent, {}, "second formula does not entail the first (" +
                                                        backward.how + ")"};
    if (backward.model) v.witness = *backward.model;
    return v;
  }
  if (forward.outcome == Direction::Unsat && backward.outcome == Direction::Unsat) {
    return {Status::Equivalent, {}, "both entailments proved (" + forward.how + ", " +
                                        backward.how + ")"};
  }
  return {Status::Unknown, {}, "prover budget exhausted before a decision"};
}

}  // namespace formaltrip::verify
