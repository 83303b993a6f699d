#include <gtest/gtest.h>

#include "formaltrip/common/rng.hpp"
#include "formaltrip/sat/solver.hpp"
#include "formaltrip/verify/prop.hpp"
#include "oracles.hpp"

using namespace formaltrip;
using namespace formaltrip::verify;
using formaltrip::syntax::parse_prop;
using formaltrip::syntax::PropFormula;

namespace {

EquivalenceVerdict check(std::string_view a, std::string_view b, PropOptions o = {}) {
  return equivalent_prop(parse_prop(a), parse_prop(b), o);
}

void expect_witness_separates(const PropFormula& f, const PropFormula& g,
                              const EquivalenceVerdict& v) {
  ASSERT_EQ(v.status, Status::NotEquivalent);
  const auto& a = std::get<Assignment>(v.witness);
  EXPECT_NE(oracle::truth_value(f, a), oracle::truth_value(g, a));
}

// brute force over all assignments of n variables
bool brute_sat(int n, const std::vector<std::vector<int>>& clauses) {
  for (std::uint32_t row = 0; row < (1u << n); ++row) {
    bool all = true;
    for (const auto& c : clauses) {
      bool any = false;
      for (int lit : c) {
        const bool value = (row >> (std::abs(lit) - 1)) & 1;
        if ((lit > 0) == value) any = true;
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST(PropVerifier, DeMorgan) {
  EXPECT_EQ(check("¬(p1 ∧ p2)", "¬p1 ∨ ¬p2").status, Status::Equivalent);
}

TEST(PropVerifier, Idempotence) { EXPECT_EQ(check("p1 ∧ p1", "p1").status, Status::Equivalent); }

TEST(PropVerifier, ErrorTableExamplesDiffer) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"(¬p11 ∧ ¬p8)", "(¬(p11 ∧ p8))"},
      {"(¬p10 ∧ (¬p9 ∨ p7))", "¬(p10 ∧ (¬p9 ∨ p7))"},
      {"(¬p3 ∧ ¬p7)", "(¬p3 ∨ ¬p7)"},
      {"(¬¬p2 ∨ p3)", "(p2 ∨ p3) ∧ ¬¬p2"},
      {"(¬p2 ∧ p5 ∧ ¬p6)", "(¬p ∧ q ∧ ¬r)"},
  };
  for (const auto& [a, b] : pairs) {
    const auto f = parse_prop(a), g = parse_prop(b);
    expect_witness_separates(f, g, equivalent_prop(f, g));
  }
}

TEST(PropVerifier, WitnessIsFirstDifferingRow) {
  // variables sorted: p11, p8; row index bits p11 (low), p8 (high)
  // row 0: p11=F, p8=F -> both true; row 1: p11=T, p8=F -> lhs F, rhs T
  const auto v = check("(¬p11 ∧ ¬p8)", "¬(p11 ∧ p8)");
  ASSERT_EQ(v.status, Status::NotEquivalent);
  EXPECT_EQ(std::get<Assignment>(v.witness), (Assignment{{"p11", true}, {"p8", false}}));
}

TEST(PropVerifier, DisjointVariablesUseUnion) {
  const auto v = check("p1 ∨ ¬p1", "p2 ∨ ¬p2");
  EXPECT_EQ(v.status, Status::Equivalent);
  const auto w = check("p1", "p2");
  EXPECT_EQ(w.status, Status::NotEquivalent);
  EXPECT_EQ(std::get<Assignment>(w.witness).size(), 2u);
}

TEST(PropVerifier, MatchesTruthTableOracleProperty) {
  Rng rng(2024);
  int equivalent = 0;
  for (int i = 0; i < 400; ++i) {
    const auto f = gen::prop(rng, 4, 4);
    // half of the pairs are built to be equivalent
    const auto g = rng.bernoulli(0.5) ? PropFormula::negation(PropFormula::negation(f))
                                      : gen::prop(rng, 4, 4);
    const auto v = equivalent_prop(f, g);
    const bool expected = oracle::truth_table_equivalent(f, g);
    EXPECT_EQ(v.status == Status::Equivalent, expected);
    EXPECT_NE(v.status, Status::Unknown);
    if (!expected) expect_witness_separates(f, g, v);
    equivalent += expected;
  }
  EXPECT_GT(equivalent, 150);
}

TEST(PropVerifier, SatPathAgreesWithTruthTable) {
  Rng rng(7);
  PropOptions sat_only;
  sat_only.exhaustive_limit = 0;
  for (int i = 0; i < 300; ++i) {
    const auto f = gen::prop(rng, 5, 4);
    const auto g = gen::prop(rng, 5, 4);
    const auto a = equivalent_prop(f, g);
    const auto b = equivalent_prop(f, g, sat_only);
    EXPECT_EQ(a.status, b.status);
    if (b.status == Status::NotEquivalent) expect_witness_separates(f, g, b);
  }
}

TEST(PropVerifier, ManyVariablesGoThroughSat) {
  std::string lhs, rhs;
  for (int i = 1; i <= 40; ++i) {
    if (i > 1) {
      lhs += " ∧ ";
      rhs += " ∨ ";
    }
    lhs += "p" + std::to_string(i);
    rhs += "¬p" + std::to_string(i);
  }
  EXPECT_EQ(check("¬(" + lhs + ")", rhs).status, Status::Equivalent);
  const auto v = check(lhs, "¬(" + rhs + ") ∧ p41");
  expect_witness_separates(parse_prop(lhs), parse_prop("¬(" + rhs + ") ∧ p41"), v);
}

TEST(SatSolver, TrivialCases) {
  sat::Solver s;
  const int a = s.new_var();
  s.add_clause({a});
  EXPECT_EQ(s.solve(), sat::Solver::Result::Sat);
  EXPECT_TRUE(s.model_value(a));
  s.add_clause({-a});
  EXPECT_EQ(s.solve(), sat::Solver::Result::Unsat);
}

TEST(SatSolver, PigeonholeFourIntoThreeIsUnsat) {
  sat::Solver s;
  int v[4][3];
  for (auto& row : v) {
    for (int& x : row) x = s.new_var();
  }
  for (auto& row : v) s.add_clause({row[0], row[1], row[2]});
  for (int h = 0; h < 3; ++h) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) s.add_clause({-v[i][h], -v[j][h]});
    }
  }
  EXPECT_EQ(s.solve(), sat::Solver::Result::Unsat);
}

TEST(SatSolver, RandomThreeSatMatchesBruteForceProperty) {
  Rng rng(99);
  for (int round = 0; round < 300; ++round) {
    const int n = 3 + static_cast<int>(rng.uniform(8));
    const int m = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(5 * n))) + 1;
    std::vector<std::vector<int>> clauses;
    sat::Solver s;
    for (int i = 0; i < n; ++i) s.new_var();
    for (int c = 0; c < m; ++c) {
      std::vector<int> clause;
      for (int k = 0; k < 3; ++k) {
        const int var = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(n)));
        clause.push_back(rng.bernoulli(0.5) ? var : -var);
      }
      s.add_clause(clause);
      clauses.push_back(clause);
    }
    const auto r = s.solve();
    ASSERT_NE(r, sat::Solver::Result::Unknown);
    EXPECT_EQ(r == sat::Solver::Result::Sat, brute_sat(n, clauses));
    if (r == sat::Solver::Result::Sat) {
      for (const auto& c : clauses) {
        bool any = false;
        for (int lit : c) any = any || (s.model_value(std::abs(lit)) == (lit > 0));
        EXPECT_TRUE(any);
      }
    }
  }
}

TEST(SatSolver, ConflictLimitYieldsUnknown) {
  sat::Solver s;
  // pigeonhole 8 into 7 needs many conflicts
  const int P = 8, H = 7;
  std::vector<std::vector<int>> v(P, std::vector<int>(H));
  for (auto& row : v) {
    for (int& x : row) x = s.new_var();
  }
  for (auto& row : v) s.add_clause(row);
  for (int h = 0; h < H; ++h) {
    for (int i = 0; i < P; ++i) {
      for (int j = i + 1; j < P; ++j) s.add_clause({-v[i][h], -v[j][h]});
    }
  }
  sat::Solver::Limits limits;
  limits.max_conflicts = 5;
  EXPECT_EQ(s.solve(limits), sat::Solver::Result::Unknown);
}

TEST(CnfBuilder, XorGate) {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      sat::Solver s;
      sat::CnfBuilder cnf(s);
      const int x = cnf.fresh(), y = cnf.fresh();
      cnf.require(a ? x : -x);
      cnf.require(b ? y : -y);
      cnf.require(cnf.xor_of(x, y));
      EXPECT_EQ(s.solve() == sat::Solver::Result::Sat, a != b);
    }
  }
}
