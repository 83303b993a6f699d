#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace formaltrip::grammar {

using Symbol = int;

struct Rule {
  Symbol lhs = 0;
  std::vector<Symbol> rhs;  // empty for an epsilon production
};

/// A context-free grammar. Nonterminals are the symbols that appear on a left-hand side;
/// every other symbol is a terminal.
///
/// Rule-file format, one production per line:
///
///     # comment
///     S -> ( S ∧ S ) | ¬ v | v
///     K -> * | ε
///     %terminals ( ) ∧ ¬ v *     (optional; enables undeclared-symbol checks)
///
/// Symbols are whitespace separated; `ε` or an empty alternative is the empty string and
/// a quoted token such as '|' is taken literally. The first left-hand side is the start.
class Grammar {
 public:
  /// Throws ConfigError on malformed input.
  static Grammar from_rules(std::string_view text, std::string id);

  /// One of the built-in dataset grammars: ksat3, prop, fol, regex.
  static const Grammar& builtin(std::string_view id);
  static std::vector<std::string> builtin_ids();
  static std::string_view builtin_rule_text(std::string_view id);

  const std::string& id() const { return id_; }
  Symbol start() const { return start_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<std::size_t>& rules_for(Symbol nonterminal) const;

  bool is_nonterminal(Symbol s) const { return is_nonterminal_[static_cast<std::size_t>(s)]; }
  const std::string& name(Symbol s) const { return names_[static_cast<std::size_t>(s)]; }
  std::optional<Symbol> find(std::string_view name) const;
  std::size_t symbol_count() const { return names_.size(); }

  std::vector<std::string> nonterminals() const;
  std::vector<std::string> terminals() const;

  /// Rule text in the file format, one production per line.
  std::string to_rule_text() const;

  /// Human-readable sentential form: binary connectives spaced, quantifier variables and
  /// the quantifier dot followed by a space, adjacent word-like tokens separated.
  std::string render(std::span<const Symbol> form) const;

 private:
  Symbol intern(const std::string& name);

  std::string id_;
  std::vector<std::string> names_;
  std::vector<bool> is_nonterminal_;
  std::vector<Rule> rules_;
  std::vector<std::vector<std::size_t>> by_lhs_;
  Symbol start_ = 0;
};

/// Joins symbol texts with the spacing used for every sentential form and dataset text.
std::string render_tokens(std::span<const std::string> tokens);

}  // namespace formaltrip::grammar
