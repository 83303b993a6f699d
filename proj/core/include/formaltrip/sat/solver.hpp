#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace formaltrip::sat {

/// Conflict-driven clause-learning SAT solver: two watched literals, first-UIP learning,
/// VSIDS branching with phase saving, Luby restarts.
///
/// Literals use DIMACS conventions: variable v >= 1 is the literal v, its negation -v.
class Solver {
 public:
  enum class Result { Sat, Unsat, Unknown };

  struct Limits {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::uint64_t max_conflicts = 0;  // 0: unlimited
  };

  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  /// Clauses may be added between solve() calls.
  void add_clause(std::span<const int> lits);
  void add_clause(std::initializer_list<int> lits) {
    add_clause(std::span<const int>(lits.begin(), lits.size()));
  }

  Result solve();
  Result solve(const Limits& limits);

  /// Value of `var` in the last satisfying assignment.
  bool model_value(int var) const { return model_[static_cast<std::size_t>(var - 1)]; }

  std::uint64_t conflicts() const { return conflicts_; }

 private:
  enum : signed char { kFalse = 0, kTrue = 1, kUndef = 2 };

  struct Clause {
    std::vector<int> lits;
  };

  static int encode(int dimacs);
  signed char value(int lit) const;
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void enqueue(int lit, int reason);
  int propagate();
  void analyze(int conflict, std::vector<int>& learnt, int& backjump);
  void cancel_until(int level);
  void attach(int clause);
  int pick_branch();
  void bump(int var);

  void heap_insert(int var);
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  int heap_pop();
  bool heap_less(int a, int b) const { return activity_[a] > activity_[b]; }

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<signed char> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<bool> phase_;
  std::vector<bool> seen_;
  std::vector<double> activity_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool unsat_ = false;
  std::uint64_t conflicts_ = 0;
  std::vector<bool> model_;
};

/// Tseitin encoder onto a Solver. Every gate returns a literal equivalent to its output.
class CnfBuilder {
 public:
  explicit CnfBuilder(Solver& solver) : solver_(solver) {}

  int fresh() { return solver_.new_var(); }
  int constant(bool value);
  int and_of(std::span<const int> lits);
  int or_of(std::span<const int> lits);
  int xor_of(int a, int b);
  int iff(int a, int b) { return -xor_of(a, b); }
  void require(int lit) { solver_.add_clause({lit}); }

  Solver& solver() { return solver_; }

 private:
  Solver& solver_;
  int true_lit_ = 0;
};

}  // namespace formaltrip::sat
