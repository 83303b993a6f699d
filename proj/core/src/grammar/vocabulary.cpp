#include "formaltrip/grammar/vocabulary.hpp"

#include <algorithm>

namespace formaltrip::grammar {

namespace {

constexpr std::uint64_t kNameStream = 0x6e616d6573;   // "names"
constexpr std::uint64_t kArityStream = 0x6172697479;  // "arity"

struct Scope {
  std::string variable;
  int depth;
};

}  // namespace

std::string_view to_string(NamingMode m) {
  return m == NamingMode::English ? "english" : "synthetic";
}

NamingMode naming_mode_from_string(std::string_view s) {
  if (s == "synthetic") return NamingMode::Synthetic;
  if (s == "english") return NamingMode::English;
  throw ConfigError("unknown naming mode '" + std::string(s) + "'");
}

void VocabularyConfig::validate() const {
  if (num_propositions < 1) throw ConfigError("num_propositions must be at least 1");
  if (num_predicates < 1) throw ConfigError("num_predicates must be at least 1");
  if (num_objects < 1) throw ConfigError("num_objects must be at least 1");
  if (min_predicate_arity > max_predicate_arity) {
    throw ConfigError("min_predicate_arity exceeds max_predicate_arity");
  }
  if (!(free_variable_prob >= 0.0 && free_variable_prob <= 1.0)) {
    throw ConfigError("free_variable_prob must lie in [0, 1]");
  }
  if (alphabet_size < 1 || alphabet_size > 36) {
    throw ConfigError("alphabet_size must lie in [1, 36]");
  }
  if (naming == NamingMode::English) {
    if (num_predicates > english_predicate_words().size()) {
      throw ConfigError("num_predicates exceeds the bundled predicate word list");
    }
    if (num_objects > english_person_names().size()) {
      throw ConfigError("num_objects exceeds the bundled name list");
    }
  }
}

Vocabulary Vocabulary::resolve(const VocabularyConfig& config, std::uint64_t seed) {
  config.validate();
  Vocabulary v;
  v.config = config;
  for (std::size_t i = 1; i <= config.num_propositions; ++i) {
    v.propositions.push_back("p" + std::to_string(i));
  }
  if (config.naming == NamingMode::English) {
    Rng names(derive_seed(seed, kNameStream));
    const auto words = english_predicate_words();
    for (std::size_t i : names.sample_indices(words.size(), config.num_predicates)) {
      v.predicates.emplace_back(words[i]);
    }
    const auto people = english_person_names();
    for (std::size_t i : names.sample_indices(people.size(), config.num_objects)) {
      v.objects.emplace_back(people[i]);
    }
  } else {
    for (std::size_t i = 1; i <= config.num_predicates; ++i) {
      v.predicates.push_back("pred" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= config.num_objects; ++i) {
      v.objects.push_back("p" + std::to_string(i));
    }
  }
  Rng arity(derive_seed(seed, kArityStream));
  const std::size_t span = config.max_predicate_arity - config.min_predicate_arity + 1;
  for (std::size_t i = 0; i < v.predicates.size(); ++i) {
    v.arities.push_back(config.min_predicate_arity + arity.uniform(span));
  }
  v.alphabet = syntax::Alphabet::digits(config.alphabet_size);
  return v;
}

Instantiation instantiate(const Grammar& g, std::span<const Symbol> leaf,
                          syntax::Formalism formalism, const Vocabulary& vocab, Rng& rng) {
  if (!is_terminal_form(g, leaf)) throw Error("instantiate requires a terminal form");
  Instantiation out;
  std::vector<std::string> tokens;
  std::vector<Scope> scopes;
  int depth = 0;
  std::size_t variables = 0;
  std::string prepended;
  const auto& cfg = vocab.config;
  const auto symbols = vocab.alphabet.symbols();

  auto fresh = [&] { return "x" + std::to_string(++variables); };

  for (Symbol s : leaf) {
    const std::string& t = g.name(s);
    if (t == "v") {
      tokens.push_back(vocab.propositions[rng.uniform(vocab.propositions.size())]);
    } else if (t == "\xCE\xA3") {
      tokens.emplace_back(1, symbols[rng.uniform(symbols.size())]);
    } else if (t == "f") {
      scopes.push_back({fresh(), depth});
      tokens.push_back(scopes.back().variable);
    } else if (t == "p") {
      const std::size_t k = rng.uniform(vocab.predicates.size());
      std::string atom = vocab.predicates[k];
      const std::size_t arity = vocab.arities[k];
      for (std::size_t a = 0; a < arity; ++a) {
        atom += a == 0 ? "(" : ", ";
        std::string arg;
        if (rng.bernoulli(cfg.free_variable_prob)) {
          if (!scopes.empty()) {
            arg = scopes.back().variable;
          } else if (!prepended.empty()) {
            arg = prepended;
          } else if (!cfg.max_free_variables || variables < *cfg.max_free_variables) {
            prepended = fresh();
            arg = prepended;
          } else {
            ++out.exhausted_slots;
          }
        }
        if (arg.empty()) arg = vocab.objects[rng.uniform(vocab.objects.size())];
        atom += arg;
      }
      if (arity > 0) atom += ")";
      tokens.push_back(std::move(atom));
    } else {
      if (t == "(") ++depth;
      if (t == ")") {
        --depth;
        while (!scopes.empty() && scopes.back().depth > depth) scopes.pop_back();
      }
      tokens.push_back(t);
    }
  }

  std::string text = render_tokens(tokens);
  if (!prepended.empty()) {
    const bool forall = rng.bernoulli(0.5);
    text = std::string(forall ? "\xE2\x88\x80 " : "\xE2\x88\x83 ") + prepended + ". " + text;
  }
  syntax::ParseOptions options;
  if (formalism == syntax::Formalism::Regex) options.alphabet = vocab.alphabet;
  out.expression = syntax::parse_expression(text, formalism, options);
  return out;
}

syntax::FormalExpression instantiate_strict(const Grammar& g, std::span<const Symbol> leaf,
                                            syntax::Formalism formalism,
                                            const Vocabulary& vocab, Rng& rng) {
  auto result = instantiate(g, leaf, formalism, vocab, rng);
  if (result.exhausted_slots > 0) {
    throw VocabularyExhausted("max_free_variables reached; " +
                              std::to_string(result.exhausted_slots) +
                              " argument slot(s) kept their object");
  }
  return std::move(result.expression);
}

}  // namespace formaltrip::grammar
