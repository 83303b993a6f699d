#include "formaltrip/verify/prop.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "formaltrip/sat/solver.hpp"

namespace formaltrip::verify {

using syntax::PropFormula;

namespace {

void collect(const PropFormula& f, std::set<std::string>& out) {
  if (f.kind == PropFormula::Kind::Proposition) {
    out.insert(f.name);
    return;
  }
  for (const auto& c : f.children) collect(c, out);
}

// Row patterns for the six variables that vary inside one 64-row word.
constexpr std::uint64_t kLowPatterns[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};

struct BitEvaluator {
  const std::map<std::string, std::size_t>& index;
  std::uint64_t chunk;

  std::uint64_t operator()(const PropFormula& f) const {
    switch (f.kind) {
      case PropFormula::Kind::Proposition: {
        const std::size_t i = index.at(f.name);
        if (i < 6) return kLowPatterns[i];
        return ((chunk >> (i - 6)) & 1) ? ~std::uint64_t{0} : 0;
      }
      case PropFormula::Kind::Not:
        return ~(*this)(f.children[0]);
      case PropFormula::Kind::And: {
        std::uint64_t acc = ~std::uint64_t{0};
        for (const auto& c : f.children) acc &= (*this)(c);
        return acc;
      }
      case PropFormula::Kind::Or: {
        std::uint64_t acc = 0;
        for (const auto& c : f.children) acc |= (*this)(c);
        return acc;
      }
    }
    return 0;
  }
};

int encode(const PropFormula& f, sat::CnfBuilder& cnf, std::map<std::string, int>& vars) {
  switch (f.kind) {
    case PropFormula::Kind::Proposition:
      return vars.at(f.name);
    case PropFormula::Kind::Not:
      return -encode(f.children[0], cnf, vars);
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or: {
      std::vector<int> lits;
      for (const auto& c : f.children) lits.push_back(encode(c, cnf, vars));
      return f.kind == PropFormula::Kind::And ? cnf.and_of(lits) : cnf.or_of(lits);
    }
  }
  return 0;
}

EquivalenceVerdict by_truth_table(const PropFormula& f, const PropFormula& g,
                                  const std::vector<std::string>& vars) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vars.size(); ++i) index[vars[i]] = i;
  const std::size_t n = vars.size();
  const std::uint64_t chunks = n <= 6 ? 1 : (std::uint64_t{1} << (n - 6));
  const std::uint64_t mask = n >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << n)) - 1);
  for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
    BitEvaluator eval{index, chunk};
    const std::uint64_t diff = (eval(f) ^ eval(g)) & mask;
    if (diff == 0) continue;
    const std::uint64_t row = chunk * 64 + static_cast<std::uint64_t>(__builtin_ctzll(diff));
    Assignment witness;
    for (std::size_t i = 0; i < n; ++i) witness[vars[i]] = ((row >> i) & 1) != 0;
    return {Status::NotEquivalent, witness, "truth tables differ"};
  }
  return {Status::Equivalent, {}, {}};
}

EquivalenceVerdict by_sat(const PropFormula& f, const PropFormula& g,
                          const std::vector<std::string>& vars) {
  sat::Solver solver;
  sat::CnfBuilder cnf(solver);
  std::map<std::string, int> ids;
  for (const auto& v : vars) ids[v] = cnf.fresh();
  const int a = encode(f, cnf, ids);
  const int b = encode(g, cnf, ids);
  cnf.require(cnf.xor_of(a, b));
  if (solver.solve() == sat::Solver::Result::Unsat) return {Status::Equivalent, {}, {}};
  Assignment witness;
  for (const auto& [name, id] : ids) witness[name] = solver.model_value(id);
  return {Status::NotEquivalent, witness, "f xor g is satisfiable"};
}

}  // namespace

bool eval_prop(const PropFormula& f, const Assignment& a) {
  switch (f.kind) {
    case PropFormula::Kind::Proposition: {
      auto it = a.find(f.name);
      if (it == a.end()) throw MissingVariable(f.name);
      return it->second;
    }
    case PropFormula::Kind::Not:
      return !eval_prop(f.children[0], a);
    case PropFormula::Kind::And:
      return std::count_if(f.children.begin(), f.children.end(),
                           [&](const PropFormula& c) { return eval_prop(c, a); }) ==
             static_cast<std::ptrdiff_t>(f.children.size());
    case PropFormula::Kind::Or:
      return std::count_if(f.children.begin(), f.children.end(),
                           [&](const PropFormula& c) { return eval_prop(c, a); }) > 0;
  }
  return false;
}

EquivalenceVerdict equivalent_prop(const PropFormula& f, const PropFormula& g,
                                   const PropOptions& options) {
  std::set<std::string> names;
  collect(f, names);
  collect(g, names);
  const std::vector<std::string> vars(names.begin(), names.end());
  if (vars.size() <= options.exhaustive_limit && vars.size() <= 40) {
    return by_truth_table(f, g, vars);
  }
  return by_sat(f, g, vars);
}

}  // namespace formaltrip::verify
