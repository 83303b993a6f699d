#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace oracle {

using formaltrip::syntax::FolNode;
using formaltrip::syntax::FolTerm;
using formaltrip::verify::Dfa;
using formaltrip::verify::FiniteModel;

bool truth_value(const PropFormula& f, const std::map<std::string, bool>& a) {
  switch (f.kind) {
    case PropFormula::Kind::Proposition: return a.at(f.name);
    case PropFormula::Kind::Not: return !truth_value(f.children[0], a);
    case PropFormula::Kind::And:
      for (const auto& c : f.children) {
        if (!truth_value(c, a)) return false;
      }
      return true;
    case PropFormula::Kind::Or:
      for (const auto& c : f.children) {
        if (truth_value(c, a)) return true;
      }
      return false;
  }
  return false;
}

namespace {

void collect(const PropFormula& f, std::set<std::string>& out) {
  if (f.kind == PropFormula::Kind::Proposition) out.insert(f.name);
  for (const auto& c : f.children) collect(c, out);
}

// Derivative terms, normalized up to associativity/commutativity/idempotence of union.
struct Re;
using ReP = std::shared_ptr<const Re>;

struct Re {
  enum Kind { Empty, Eps, Sym, Cat, Alt, Star } kind = Empty;
  char symbol = 0;
  std::vector<ReP> parts;
  std::string key;
  bool nullable = false;
};

ReP make(Re r) { return std::make_shared<const Re>(std::move(r)); }

ReP empty() {
  static const ReP e = make({Re::Empty, 0, {}, "#", false});
  return e;
}

ReP eps() {
  static const ReP e = make({Re::Eps, 0, {}, "~", true});
  return e;
}

ReP sym(char c) { return make({Re::Sym, c, {}, std::string(1, c), false}); }

ReP cat(const ReP& x, const ReP& y) {
  if (x->kind == Re::Empty || y->kind == Re::Empty) return empty();
  if (x->kind == Re::Eps) return y;
  if (y->kind == Re::Eps) return x;
  if (x->kind == Re::Cat) return cat(x->parts[0], cat(x->parts[1], y));
  return make({Re::Cat, 0, {x, y}, "(" + x->key + "." + y->key + ")",
               x->nullable && y->nullable});
}

ReP alt(const ReP& x, const ReP& y) {
  std::map<std::string, ReP> members;
  for (const ReP& side : {x, y}) {
    if (side->kind == Re::Alt) {
      for (const auto& p : side->parts) members.emplace(p->key, p);
    } else if (side->kind != Re::Empty) {
      members.emplace(side->key, side);
    }
  }
  if (members.empty()) return empty();
  if (members.size() == 1) return members.begin()->second;
  Re r{Re::Alt, 0, {}, "[", false};
  for (const auto& [k, p] : members) {
    if (r.key.size() > 1) r.key += "|";
    r.key += k;
    r.parts.push_back(p);
    r.nullable = r.nullable || p->nullable;
  }
  r.key += "]";
  return make(std::move(r));
}

ReP star(const ReP& x) {
  if (x->kind == Re::Star) return x;
  if (x->kind == Re::Empty || x->kind == Re::Eps) return eps();
  return make({Re::Star, 0, {x}, x->key + "*", true});
}

ReP derive(const ReP& r, char c) {
  switch (r->kind) {
    case Re::Empty:
    case Re::Eps: return empty();
    case Re::Sym: return r->symbol == c ? eps() : empty();
    case Re::Cat: {
      ReP first = cat(derive(r->parts[0], c), r->parts[1]);
      return r->parts[0]->nullable ? alt(first, derive(r->parts[1], c)) : first;
    }
    case Re::Alt: {
      ReP out = empty();
      for (const auto& p : r->parts) out = alt(out, derive(p, c));
      return out;
    }
    case Re::Star: return cat(derive(r->parts[0], c), r);
  }
  return empty();
}

ReP convert(const RegexAst& r) {
  switch (r.kind) {
    case RegexAst::Kind::Literal: return sym(r.symbol);
    case RegexAst::Kind::Star: return star(convert(r.children[0]));
    case RegexAst::Kind::Concat: {
      ReP out = eps();
      for (const auto& c : r.children) out = cat(out, convert(c));
      return out;
    }
  }
  return empty();
}

}  // namespace

bool truth_table_equivalent(const PropFormula& f, const PropFormula& g) {
  std::set<std::string> names;
  collect(f, names);
  collect(g, names);
  const std::vector<std::string> vars(names.begin(), names.end());
  if (vars.size() > 24) throw std::invalid_argument("truth table too large");
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << vars.size()); ++row) {
    std::map<std::string, bool> a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = (row >> i) & 1;
    if (truth_value(f, a) != truth_value(g, a)) return false;
  }
  return true;
}

bool derivative_matches(const RegexAst& r, std::string_view word) {
  ReP cur = convert(r);
  for (char c : word) cur = derive(cur, c);
  return cur->nullable;
}

std::optional<std::string> symmetric_difference_word(const RegexAst& a, const RegexAst& b,
                                                     std::string_view sigma) {
  std::string symbols(sigma);
  std::sort(symbols.begin(), symbols.end());
  struct Item {
    ReP x, y;
    std::string word;
  };
  std::deque<Item> queue{{convert(a), convert(b), ""}};
  std::set<std::pair<std::string, std::string>> seen{{queue.front().x->key, queue.front().y->key}};
  while (!queue.empty()) {
    Item it = std::move(queue.front());
    queue.pop_front();
    if (it.x->nullable != it.y->nullable) return it.word;
    for (char c : symbols) {
      Item next{derive(it.x, c), derive(it.y, c), it.word + c};
      if (seen.insert({next.x->key, next.y->key}).second) queue.push_back(std::move(next));
    }
    if (seen.size() > 200000) throw std::runtime_error("derivative product exploded");
  }
  return std::nullopt;
}

std::size_t table_filling_state_count(const Dfa& d) {
  std::vector<std::size_t> states;
  std::vector<bool> reached(d.size(), false);
  std::deque<std::size_t> queue{d.start};
  reached[d.start] = true;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    states.push_back(s);
    for (std::size_t t : d.delta[s]) {
      if (!reached[t]) {
        reached[t] = true;
        queue.push_back(t);
      }
    }
  }
  const std::size_t n = d.size();
  std::vector<std::vector<bool>> marked(n, std::vector<bool>(n, false));
  for (std::size_t p : states) {
    for (std::size_t q : states) marked[p][q] = d.accepting[p] != d.accepting[q];
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p : states) {
      for (std::size_t q : states) {
        if (marked[p][q]) continue;
        for (std::size_t s = 0; s < d.alphabet.size(); ++s) {
          if (marked[d.delta[p][s]][d.delta[q][s]]) {
            marked[p][q] = marked[q][p] = true;
            changed = true;
            break;
          }
        }
      }
    }
  }
  std::size_t classes = 0;
  std::vector<bool> merged(n, false);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (merged[states[i]]) continue;
    ++classes;
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (!marked[states[i]][states[j]]) merged[states[j]] = true;
    }
  }
  return classes;
}

std::set<std::string> enumerate_language(const formaltrip::grammar::Grammar& g,
                                         std::size_t depth) {
  using formaltrip::grammar::Symbol;
  std::set<std::string> out;
  std::set<std::vector<Symbol>> level{{g.start()}};
  for (std::size_t d = 1; d <= depth && !level.empty(); ++d) {
    std::set<std::vector<Symbol>> next;
    for (const auto& form : level) {
      auto nt = std::find_if(form.begin(), form.end(), [&](Symbol s) { return g.is_nonterminal(s); });
      const auto pos = static_cast<std::size_t>(nt - form.begin());
      for (std::size_t rule : g.rules_for(*nt)) {
        std::vector<Symbol> child(form.begin(), form.begin() + static_cast<long>(pos));
        const auto& rhs = g.rules()[rule].rhs;
        child.insert(child.end(), rhs.begin(), rhs.end());
        child.insert(child.end(), form.begin() + static_cast<long>(pos) + 1, form.end());
        if (std::none_of(child.begin(), child.end(), [&](Symbol s) { return g.is_nonterminal(s); })) {
          out.insert(g.render(child));
        } else {
          next.insert(std::move(child));
        }
      }
    }
    level = std::move(next);
  }
  return out;
}

namespace {

bool eval_node(const FolNode& n, const FiniteModel& m, std::map<std::string, std::size_t>& env) {
  switch (n.kind) {
    case FolNode::Kind::Atom: {
      std::vector<std::size_t> args;
      for (const FolTerm& t : n.terms) {
        if (t.kind == FolTerm::Kind::Variable) {
          args.push_back(env.at(t.name));
        } else {
          auto it = m.constants.find(t.name);
          if (it == m.constants.end()) throw std::invalid_argument("uninterpreted " + t.name);
          args.push_back(it->second);
        }
      }
      auto rel = m.relations.find(n.predicate);
      return rel != m.relations.end() && rel->second.count(args) > 0;
    }
    case FolNode::Kind::Not: return !eval_node(n.children[0], m, env);
    case FolNode::Kind::And:
      return std::all_of(n.children.begin(), n.children.end(),
                         [&](const FolNode& c) { return eval_node(c, m, env); });
    case FolNode::Kind::Or:
      return std::any_of(n.children.begin(), n.children.end(),
                         [&](const FolNode& c) { return eval_node(c, m, env); });
    case FolNode::Kind::Forall:
    case FolNode::Kind::Exists: {
      const bool universal = n.kind == FolNode::Kind::Forall;
      // iterate all assignments of the block's variables
      std::vector<std::size_t> values(n.variables.size(), 0);
      std::map<std::string, std::size_t> saved = env;
      bool result = universal;
      while (true) {
        for (std::size_t i = 0; i < values.size(); ++i) env[n.variables[i]] = values[i];
        const bool v = eval_node(n.children[0], m, env);
        if (universal && !v) { result = false; break; }
        if (!universal && v) { result = true; break; }
        std::size_t i = 0;
        while (i < values.size() && ++values[i] == m.domain_size) values[i++] = 0;
        if (i == values.size()) break;
      }
      env = std::move(saved);
      return result;
    }
  }
  return false;
}

}  // namespace

bool holds(const FolFormula& f, const FiniteModel& m) {
  std::map<std::string, std::size_t> env;
  return eval_node(formaltrip::syntax::fol_tree(f), m, env);
}

}  // namespace oracle

namespace gen {

using formaltrip::syntax::PropFormula;
using formaltrip::syntax::RegexAst;

PropFormula prop(Rng& rng, std::size_t vars, std::size_t depth) {
  if (depth == 0 || rng.bernoulli(0.25)) {
    return PropFormula::proposition("p" + std::to_string(1 + rng.uniform(vars)));
  }
  switch (rng.uniform(3)) {
    case 0: return PropFormula::negation(prop(rng, vars, depth - 1));
    case 1: {
      std::vector<PropFormula> kids;
      for (std::size_t i = 0, k = 2 + rng.uniform(2); i < k; ++i) {
        kids.push_back(prop(rng, vars, depth - 1));
      }
      return PropFormula::conjunction(std::move(kids));
    }
    default: {
      std::vector<PropFormula> kids;
      for (std::size_t i = 0, k = 2 + rng.uniform(2); i < k; ++i) {
        kids.push_back(prop(rng, vars, depth - 1));
      }
      return PropFormula::disjunction(std::move(kids));
    }
  }
}

RegexAst regex(Rng& rng, std::string_view sigma, std::size_t depth) {
  const double r = rng.unit();
  if (depth == 0 || r < 0.25) return RegexAst::literal(sigma[rng.uniform(sigma.size())]);
  if (r < 0.55) {
    RegexAst child = regex(rng, sigma, depth - 1);
    if (child.kind == RegexAst::Kind::Star) return child;
    return RegexAst::star(std::move(child));
  }
  std::vector<RegexAst> parts;
  for (int i = 0; i < 2; ++i) {
    RegexAst p = regex(rng, sigma, depth - 1);
    if (p.kind == RegexAst::Kind::Concat) {
      for (auto& c : p.children) parts.push_back(std::move(c));
    } else {
      parts.push_back(std::move(p));
    }
  }
  return RegexAst::concat(std::move(parts));
}

namespace {

std::string fol_matrix(Rng& rng, std::size_t depth, const std::vector<std::string>& bound) {
  auto term = [&] {
    const std::size_t pool = bound.size() + 2;
    const std::size_t k = rng.uniform(pool);
    if (k < bound.size()) return bound[k];
    return std::string(k == bound.size() ? "a" : "b");
  };
  if (depth == 0 || rng.bernoulli(0.3)) {
    if (rng.bernoulli(0.5)) return "pred1(" + term() + ")";
    return "pred2(" + term() + ", " + term() + ")";
  }
  switch (rng.uniform(3)) {
    case 0: return "¬" + fol_matrix(rng, depth - 1, bound);
    case 1:
      return "(" + fol_matrix(rng, depth - 1, bound) + " ∧ " + fol_matrix(rng, depth - 1, bound) +
             ")";
    default:
      return "(" + fol_matrix(rng, depth - 1, bound) + " ∨ " + fol_matrix(rng, depth - 1, bound) +
             ")";
  }
}

}  // namespace

std::string fol_text(Rng& rng, std::size_t depth) {
  std::vector<std::string> bound;
  std::string prefix;
  const std::size_t blocks = rng.uniform(3);
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::string v = i == 0 ? "x" : "y";
    bound.push_back(v);
    prefix += (rng.bernoulli(0.5) ? "∀" : "∃") + v + ". ";
  }
  return prefix + fol_matrix(rng, depth, bound);
}

}  // namespace gen
