#include "formaltrip/sat/solver.hpp"

#include <algorithm>
#include <cstdlib>

#include "formaltrip/common/error.hpp"

namespace formaltrip::sat {

namespace {

inline int var_of(int lit) { return lit >> 1; }
inline int negate(int lit) { return lit ^ 1; }

constexpr double kDecay = 0.95;
constexpr std::uint64_t kRestartUnit = 100;

// Luby sequence 1 1 2 1 1 2 4 1 1 2 ... for 0-based x.
std::uint64_t luby(std::uint64_t x) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::uint64_t{1} << seq;
}

}  // namespace

int Solver::encode(int dimacs) {
  const int v = std::abs(dimacs) - 1;
  return 2 * v + (dimacs < 0 ? 1 : 0);
}

signed char Solver::value(int lit) const {
  const signed char a = assigns_[static_cast<std::size_t>(var_of(lit))];
  if (a == kUndef) return kUndef;
  return static_cast<signed char>(a ^ (lit & 1));
}

int Solver::new_var() {
  const int v = num_vars();
  assigns_.push_back(kUndef);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(false);
  seen_.push_back(false);
  activity_.push_back(0.0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v + 1;
}

void Solver::attach(int clause) {
  const auto& c = clauses_[static_cast<std::size_t>(clause)].lits;
  watches_[static_cast<std::size_t>(c[0])].push_back(clause);
  watches_[static_cast<std::size_t>(c[1])].push_back(clause);
}

void Solver::add_clause(std::span<const int> lits) {
  if (unsat_) return;
  cancel_until(0);
  std::vector<int> c;
  c.reserve(lits.size());
  for (int d : lits) {
    if (d == 0 || std::abs(d) > num_vars()) throw Error("sat: literal out of range");
    c.push_back(encode(d));
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::vector<int> kept;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && c[i + 1] == negate(c[i])) return;  // tautology
    const signed char v = value(c[i]);
    if (v == kTrue) return;
    if (v == kUndef) kept.push_back(c[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
  } else if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) unsat_ = true;
  } else {
    clauses_.push_back({std::move(kept)});
    attach(static_cast<int>(clauses_.size() - 1));
  }
}

void Solver::enqueue(int lit, int reason) {
  const auto v = static_cast<std::size_t>(var_of(lit));
  assigns_[v] = static_cast<signed char>((lit & 1) ^ 1);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(lit);
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const int false_lit = negate(trail_[qhead_++]);
    auto& ws = watches_[static_cast<std::size_t>(false_lit)];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const int ci = ws[i++];
      auto& c = clauses_[static_cast<std::size_t>(ci)].lits;
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) == kTrue) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[static_cast<std::size_t>(c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::bump(int var) {
  activity_[static_cast<std::size_t>(var)] += var_inc_;
  if (activity_[static_cast<std::size_t>(var)] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[static_cast<std::size_t>(var)] >= 0) {
    heap_up(static_cast<std::size_t>(heap_pos_[static_cast<std::size_t>(var)]));
  }
}

void Solver::analyze(int conflict, std::vector<int>& learnt, int& backjump) {
  learnt.assign(1, -1);
  int pending = 0;
  int p = -1;
  std::size_t idx = trail_.size();
  int confl = conflict;
  do {
    const auto& c = clauses_[static_cast<std::size_t>(confl)].lits;
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      const int q = c[k];
      const auto v = static_cast<std::size_t>(var_of(q));
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = true;
        bump(var_of(q));
        if (level_[v] >= decision_level()) {
          ++pending;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[static_cast<std::size_t>(var_of(trail_[--idx]))]) {
    }
    p = trail_[idx];
    confl = reason_[static_cast<std::size_t>(var_of(p))];
    seen_[static_cast<std::size_t>(var_of(p))] = false;
    --pending;
  } while (pending > 0);
  learnt[0] = negate(p);

  backjump = 0;
  std::size_t max_i = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    const int lv = level_[static_cast<std::size_t>(var_of(learnt[i]))];
    if (lv > backjump) {
      backjump = lv;
      max_i = i;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (int q : learnt) seen_[static_cast<std::size_t>(var_of(q))] = false;
  var_inc_ /= kDecay;
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]);
  for (std::size_t i = trail_.size(); i > stop; --i) {
    const auto v = static_cast<std::size_t>(var_of(trail_[i - 1]));
    phase_[v] = assigns_[v] == kTrue;
    assigns_[v] = kUndef;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(static_cast<int>(v));
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

int Solver::pick_branch() {
  while (!heap_.empty()) {
    const int v = heap_pop();
    if (assigns_[static_cast<std::size_t>(v)] == kUndef) {
      return 2 * v + (phase_[static_cast<std::size_t>(v)] ? 0 : 1);
    }
  }
  return -1;
}

Solver::Result Solver::solve() { return solve(Limits{}); }

Solver::Result Solver::solve(const Limits& limits) {
  if (unsat_) return Result::Unsat;
  cancel_until(0);
  if (propagate() >= 0) {
    unsat_ = true;
    return Result::Unsat;
  }
  std::vector<int> learnt;
  std::uint64_t restart_index = 0;
  std::uint64_t budget = kRestartUnit * luby(restart_index);
  std::uint64_t local_conflicts = 0;
  const std::uint64_t start_conflicts = conflicts_;
  while (true) {
    const int confl = propagate();
    if (confl >= 0) {
      ++conflicts_;
      ++local_conflicts;
      if (decision_level() == 0) {
        unsat_ = true;
        return Result::Unsat;
      }
      int backjump = 0;
      analyze(confl, learnt, backjump);
      cancel_until(backjump);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back({learnt});
        const int ci = static_cast<int>(clauses_.size() - 1);
        attach(ci);
        enqueue(learnt[0], ci);
      }
      if (limits.max_conflicts && conflicts_ - start_conflicts >= limits.max_conflicts) {
        cancel_until(0);
        return Result::Unknown;
      }
      if (limits.deadline && (conflicts_ & 255) == 0 &&
          std::chrono::steady_clock::now() >= *limits.deadline) {
        cancel_until(0);
        return Result::Unknown;
      }
      continue;
    }
    if (local_conflicts >= budget) {
      local_conflicts = 0;
      budget = kRestartUnit * luby(++restart_index);
      cancel_until(0);
      continue;
    }
    const int next = pick_branch();
    if (next < 0) {
      model_.assign(assigns_.size(), false);
      for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == kTrue;
      cancel_until(0);
      return Result::Sat;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, -1);
  }
}

void Solver::heap_insert(int var) {
  heap_pos_[static_cast<std::size_t>(var)] = static_cast<int>(heap_.size());
  heap_.push_back(var);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t pos) {
  const int v = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_pos_[static_cast<std::size_t>(heap_[pos])] = static_cast<int>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(pos);
}

void Solver::heap_down(std::size_t pos) {
  const int v = heap_[pos];
  while (true) {
    std::size_t child = 2 * pos + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[pos] = heap_[child];
    heap_pos_[static_cast<std::size_t>(heap_[pos])] = static_cast<int>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(pos);
}

int Solver::heap_pop() {
  const int top = heap_.front();
  heap_pos_[static_cast<std::size_t>(top)] = -1;
  const int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[static_cast<std::size_t>(last)] = 0;
    heap_down(0);
  }
  return top;
}

int CnfBuilder::constant(bool value) {
  if (true_lit_ == 0) {
    true_lit_ = solver_.new_var();
    solver_.add_clause({true_lit_});
  }
  return value ? true_lit_ : -true_lit_;
}

int CnfBuilder::and_of(std::span<const int> lits) {
  if (lits.empty()) return constant(true);
  if (lits.size() == 1) return lits[0];
  const int out = fresh();
  std::vector<int> big = {out};
  for (int l : lits) {
    solver_.add_clause({-out, l});
    big.push_back(-l);
  }
  solver_.add_clause(big);
  return out;
}

int CnfBuilder::or_of(std::span<const int> lits) {
  if (lits.empty()) return constant(false);
  if (lits.size() == 1) return lits[0];
  const int out = fresh();
  std::vector<int> big = {-out};
  for (int l : lits) {
    solver_.add_clause({out, -l});
    big.push_back(l);
  }
  solver_.add_clause(big);
  return out;
}

int CnfBuilder::xor_of(int a, int b) {
  const int out = fresh();
  solver_.add_clause({-out, a, b});
  solver_.add_clause({-out, -a, -b});
  solver_.add_clause({out, -a, b});
  solver_.add_clause({out, a, -b});
  return out;
}

}  // namespace formaltrip::sat
