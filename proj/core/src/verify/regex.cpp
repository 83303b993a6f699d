#include "formaltrip/verify/regex.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <utility>

namespace formaltrip::verify {

using syntax::RegexAst;

namespace {

class ThompsonBuilder {
 public:
  explicit ThompsonBuilder(Nfa& nfa) : nfa_(nfa) {}

  std::pair<std::size_t, std::size_t> build(const RegexAst& r) {
    switch (r.kind) {
      case RegexAst::Kind::Literal: {
        const auto s = state();
        const auto t = state();
        edge(s, r.symbol, t);
        return {s, t};
      }
      case RegexAst::Kind::Concat: {
        auto [s, t] = build(r.children.front());
        for (std::size_t i = 1; i < r.children.size(); ++i) {
          auto [s2, t2] = build(r.children[i]);
          edge(t, '\0', s2);
          t = t2;
        }
        return {s, t};
      }
      case RegexAst::Kind::Star: {
        const auto s = state();
        const auto [is, it] = build(r.children.front());
        const auto t = state();
        edge(s, '\0', is);
        edge(s, '\0', t);
        edge(it, '\0', is);
        edge(it, '\0', t);
        return {s, t};
      }
    }
    return {0, 0};
  }

 private:
  std::size_t state() { return nfa_.state_count++; }
  void edge(std::size_t a, char c, std::size_t b) { nfa_.transitions.push_back({a, c, b}); }

  Nfa& nfa_;
};

using StateSet = std::vector<std::size_t>;

struct NfaIndex {
  std::vector<std::vector<std::size_t>> eps;
  std::vector<std::vector<std::pair<char, std::size_t>>> moves;

  explicit NfaIndex(const Nfa& n) : eps(n.state_count), moves(n.state_count) {
    for (const auto& e : n.transitions) {
      if (e.symbol == '\0') {
        eps[e.from].push_back(e.to);
      } else {
        moves[e.from].emplace_back(e.symbol, e.to);
      }
    }
  }

  StateSet closure(StateSet set) const {
    std::vector<bool> in(eps.size(), false);
    for (auto s : set) in[s] = true;
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (auto t : eps[set[i]]) {
        if (!in[t]) {
          in[t] = true;
          set.push_back(t);
        }
      }
    }
    std::sort(set.begin(), set.end());
    return set;
  }

  StateSet step(const StateSet& set, char c) const {
    StateSet out;
    for (auto s : set) {
      for (const auto& [sym, t] : moves[s]) {
        if (sym == c) out.push_back(t);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return closure(std::move(out));
  }
};

std::string sorted_unique(std::string s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

bool Nfa::accepts(std::string_view word) const {
  NfaIndex idx(*this);
  StateSet cur = idx.closure({start});
  for (char c : word) cur = idx.step(cur, c);
  return std::any_of(cur.begin(), cur.end(), [&](std::size_t s) { return accepting[s]; });
}

bool Dfa::accepts(std::string_view word) const {
  std::size_t s = start;
  for (char c : word) {
    const auto pos = alphabet.find(c);
    if (pos == std::string::npos) return false;
    s = delta[s][pos];
  }
  return accepting[s];
}

Nfa to_nfa(const RegexAst& r, std::string_view alphabet) {
  Nfa n;
  n.alphabet = sorted_unique(std::string(alphabet));
  for (char c : syntax::regex_symbols(r)) {
    if (n.alphabet.find(c) == std::string::npos) {
      throw AlphabetMismatch(std::string("symbol '") + c + "' is not in the alphabet");
    }
  }
  ThompsonBuilder b(n);
  const auto [s, t] = b.build(r);
  n.start = s;
  n.accepting.assign(n.state_count, false);
  n.accepting[t] = true;
  return n;
}

Dfa determinize(const Nfa& n) {
  NfaIndex idx(n);
  Dfa d;
  d.alphabet = n.alphabet;
  std::map<StateSet, std::size_t> ids;
  std::vector<StateSet> sets;
  auto intern = [&](StateSet s) {
    auto [it, fresh] = ids.emplace(s, sets.size());
    if (fresh) {
      sets.push_back(std::move(s));
      d.delta.emplace_back(d.alphabet.size(), 0);
    }
    return it->second;
  };
  d.start = intern(idx.closure({n.start}));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t k = 0; k < d.alphabet.size(); ++k) {
      const std::size_t target = intern(idx.step(sets[i], d.alphabet[k]));
      d.delta[i][k] = target;
    }
  }
  d.accepting.resize(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    d.accepting[i] = std::any_of(sets[i].begin(), sets[i].end(),
                                 [&](std::size_t s) { return n.accepting[s]; });
  }
  return d;
}

Dfa minimize(const Dfa& d) {
  const std::size_t n = d.size();
  const std::size_t k = d.alphabet.size();
  std::vector<std::size_t> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = d.accepting[s] ? 1 : 0;
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_ids;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[s]);
      for (std::size_t c = 0; c < k; ++c) sig.push_back(cls[d.delta[s][c]]);
      next[s] = sig_ids.emplace(std::move(sig), sig_ids.size()).first->second;
    }
    const std::size_t count = sig_ids.size();
    cls = std::move(next);
    if (count == classes) break;
    classes = count;
  }

  // Breadth-first renumbering over the quotient, reachable part only.
  std::vector<std::size_t> order(classes, SIZE_MAX);
  std::vector<std::size_t> representative(classes, SIZE_MAX);
  for (std::size_t s = 0; s < n; ++s) {
    if (representative[cls[s]] == SIZE_MAX) representative[cls[s]] = s;
  }
  std::deque<std::size_t> queue = {cls[d.start]};
  std::vector<std::size_t> visit;
  order[cls[d.start]] = 0;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    visit.push_back(c);
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t t = cls[d.delta[representative[c]][a]];
      if (order[t] == SIZE_MAX) {
        order[t] = visit.size() + queue.size();
        queue.push_back(t);
      }
    }
  }
  Dfa out;
  out.alphabet = d.alphabet;
  out.start = 0;
  out.delta.assign(visit.size(), std::vector<std::size_t>(k, 0));
  out.accepting.assign(visit.size(), false);
  for (std::size_t c : visit) {
    const std::size_t i = order[c];
    out.accepting[i] = d.accepting[representative[c]];
    for (std::size_t a = 0; a < k; ++a) {
      out.delta[i][a] = order[cls[d.delta[representative[c]][a]]];
    }
  }
  return out;
}

Dfa determinize_minimize(const Nfa& n) { return minimize(determinize(n)); }

Dfa canonical_dfa(const RegexAst& r, const syntax::Alphabet& alphabet) {
  std::string symbols = alphabet.is_open() ? std::string() : alphabet.symbols();
  symbols += syntax::regex_symbols(r);
  return determinize_minimize(to_nfa(r, sorted_unique(symbols)));
}

DfaMetrics dfa_metrics(const Dfa& d, const DfaMetricOptions& options) {
  DfaMetrics m;
  m.nodes = d.size();
  if (options.count_parallel_edges) {
    m.edges = d.size() * d.alphabet.size();
  } else {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < d.size(); ++s) {
      for (std::size_t t : d.delta[s]) pairs.emplace(s, t);
    }
    m.edges = pairs.size();
  }
  if (m.nodes > 1) {
    const double raw =
        static_cast<double>(m.edges) / static_cast<double>(m.nodes * (m.nodes - 1));
    m.density = std::round(raw * 10.0) / 10.0;
  }
  return m;
}

std::optional<std::string> distinguishing_word(const Dfa& a, const Dfa& b) {
  if (a.alphabet != b.alphabet) throw AlphabetMismatch("automata have different alphabets");
  using Pair = std::pair<std::size_t, std::size_t>;
  std::map<Pair, std::pair<Pair, char>> parent;
  std::deque<Pair> queue;
  const Pair start{a.start, b.start};
  parent.emplace(start, std::make_pair(start, '\0'));
  queue.push_back(start);
  while (!queue.empty()) {
    const Pair cur = queue.front();
    queue.pop_front();
    if (a.accepting[cur.first] != b.accepting[cur.second]) {
      std::string word;
      for (Pair p = cur; p != start; p = parent.at(p).first) word += parent.at(p).second;
      std::reverse(word.begin(), word.end());
      return word;
    }
    for (std::size_t k = 0; k < a.alphabet.size(); ++k) {
      const Pair next{a.delta[cur.first][k], b.delta[cur.second][k]};
      if (parent.emplace(next, std::make_pair(cur, a.alphabet[k])).second) {
        queue.push_back(next);
      }
    }
  }
  return std::nullopt;
}

EquivalenceVerdict equivalent_regex(const RegexAst& a, const RegexAst& b,
                                    const syntax::Alphabet& alphabet) {
  const syntax::Alphabet shared =
      syntax::Alphabet(alphabet.is_open() ? std::string() : alphabet.symbols())
          .merged_with(syntax::regex_symbols(a) + syntax::regex_symbols(b));
  const Dfa da = canonical_dfa(a, shared);
  const Dfa db = canonical_dfa(b, shared);
  if (da == db) return {Status::Equivalent, {}, {}};
  auto word = distinguishing_word(da, db);
  return {Status::NotEquivalent, word.value_or(std::string()), "minimal DFAs differ"};
}

std::string export_edge_list(const Dfa& d) {
  std::string out = "start: " + std::to_string(d.start) + "\naccept:";
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (d.accepting[s]) out += " " + std::to_string(s);
  }
  out += "\n";
  for (std::size_t s = 0; s < d.size(); ++s) {
    for (std::size_t k = 0; k < d.alphabet.size(); ++k) {
      out += std::to_string(s) + " " + d.alphabet[k] + " " + std::to_string(d.delta[s][k]) + "\n";
    }
  }
  return out;
}

}  // namespace formaltrip::verify
