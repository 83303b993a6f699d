#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formaltrip/common/error.hpp"
#include "formaltrip/syntax/regex.hpp"
#include "formaltrip/verify/verdict.hpp"

namespace formaltrip::verify {

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// Thompson automaton. Symbol '\0' marks an epsilon transition.
struct Nfa {
  struct Edge {
    std::size_t from;
    char symbol;
    std::size_t to;
  };

  std::size_t state_count = 0;
  std::string alphabet;
  std::vector<Edge> transitions;
  std::size_t start = 0;
  std::vector<bool> accepting;

  bool accepts(std::string_view word) const;
};

/// Complete deterministic automaton over a sorted alphabet; delta[state][symbol index].
struct Dfa {
  std::string alphabet;
  std::size_t start = 0;
  std::vector<std::vector<std::size_t>> delta;
  std::vector<bool> accepting;

  std::size_t size() const { return delta.size(); }
  /// False for words with symbols outside the alphabet.
  bool accepts(std::string_view word) const;

  bool operator==(const Dfa&) const = default;
};

/// Throws AlphabetMismatch when a literal is not in `alphabet`.
Nfa to_nfa(const syntax::RegexAst& r, std::string_view alphabet);

/// Subset construction; the empty subset becomes the dead state when reachable.
Dfa determinize(const Nfa& n);

/// Partition refinement followed by breadth-first renumbering from the start state,
/// taking symbols in ascending order. Equal languages yield equal Dfa values.
Dfa minimize(const Dfa& d);

Dfa determinize_minimize(const Nfa& n);

/// Minimal canonical DFA of `r` over `alphabet` united with the literals of `r`.
Dfa canonical_dfa(const syntax::RegexAst& r, const syntax::Alphabet& alphabet);

struct DfaMetrics {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double density = 0.0;  // rounded to the nearest tenth
};

struct DfaMetricOptions {
  /// Count one edge per transition instead of one per connected ordered state pair.
  bool count_parallel_edges = false;
};

/// |E| / (|V| (|V| - 1)) with self-loops counted in |E|; 0.0 for a single state.
DfaMetrics dfa_metrics(const Dfa& d, const DfaMetricOptions& options = {});

/// Shortest, then lexicographically least, word accepted by exactly one automaton.
/// Both automata must share an alphabet.
std::optional<std::string> distinguishing_word(const Dfa& a, const Dfa& b);

/// Equivalent iff the canonical DFAs coincide. Alphabet: `alphabet` united with the
/// literals of both inputs. Never returns Unknown.
EquivalenceVerdict equivalent_regex(const syntax::RegexAst& a, const syntax::RegexAst& b,
                                    const syntax::Alphabet& alphabet = syntax::Alphabet());

/// Plain-text edge list: "start: 0", "accept: 1 2", then one "state symbol state" per line.
std::string export_edge_list(const Dfa& d);

}  // namespace formaltrip::verify
