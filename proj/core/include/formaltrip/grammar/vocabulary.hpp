#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formaltrip/common/error.hpp"
#include "formaltrip/common/rng.hpp"
#include "formaltrip/grammar/derivation.hpp"
#include "formaltrip/syntax/expression.hpp"

namespace formaltrip::grammar {

enum class NamingMode { Synthetic, English };

std::string_view to_string(NamingMode m);
NamingMode naming_mode_from_string(std::string_view s);

struct VocabularyConfig {
  std::size_t num_propositions = 12;
  std::size_t num_predicates = 8;
  std::size_t num_objects = 12;
  std::size_t min_predicate_arity = 1;
  std::size_t max_predicate_arity = 2;
  double free_variable_prob = 0.25;
  std::optional<std::size_t> max_free_variables;  // nullopt: unbounded
  std::size_t alphabet_size = 2;
  NamingMode naming = NamingMode::Synthetic;

  /// Throws ConfigError.
  void validate() const;

  bool operator==(const VocabularyConfig&) const = default;
};

/// Names and arities fixed for one dataset.
struct Vocabulary {
  VocabularyConfig config;
  std::vector<std::string> propositions;
  std::vector<std::string> predicates;
  std::vector<std::size_t> arities;  // parallel to predicates
  std::vector<std::string> objects;
  syntax::Alphabet alphabet;

  /// Draws names (english mode) and per-predicate arities from `seed`.
  static Vocabulary resolve(const VocabularyConfig& config, std::uint64_t seed);

  bool operator==(const Vocabulary&) const = default;
};

/// Bundled word lists for english naming.
std::span<const std::string_view> english_predicate_words();
std::span<const std::string_view> english_person_names();

class VocabularyExhausted : public Error {
 public:
  using Error::Error;
};

struct Instantiation {
  syntax::FormalExpression expression;
  /// Argument slots that drew a variable but kept their object because
  /// max_free_variables was reached.
  std::size_t exhausted_slots = 0;
};

/// Replaces the placeholders of a terminal form: `v` by a proposition, `p` by an atom over
/// objects and variables, `f` by a fresh quantified variable, `Σ` by an alphabet symbol.
/// A variable drawn for an argument binds at the innermost enclosing quantifier, or at a
/// prepended outermost quantifier when none encloses the atom.
Instantiation instantiate(const Grammar& g, std::span<const Symbol> leaf,
                          syntax::Formalism formalism, const Vocabulary& vocab, Rng& rng);

/// Strict variant: throws VocabularyExhausted instead of counting exhausted slots.
syntax::FormalExpression instantiate_strict(const Grammar& g, std::span<const Symbol> leaf,
                                            syntax::Formalism formalism,
                                            const Vocabulary& vocab, Rng& rng);

}  // namespace formaltrip::grammar
