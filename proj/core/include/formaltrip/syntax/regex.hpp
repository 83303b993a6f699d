#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace formaltrip::syntax {

/// Set of single-character regex symbols, kept sorted.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string symbols);

  /// {0, 1, ..., size-1}; sizes up to 36 continue with a..z.
  static Alphabet digits(std::size_t size);
  /// Accepts any ASCII digit or letter; used when no dataset alphabet is known.
  static Alphabet open();

  bool contains(char c) const;
  bool is_open() const { return open_; }
  const std::string& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }

  Alphabet merged_with(std::string_view extra) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::string symbols_;
  bool open_ = false;
};

/// Regular expression over single-character symbols: literals, concatenation, Kleene star.
struct RegexAst {
  enum class Kind { Literal, Concat, Star };

  Kind kind = Kind::Literal;
  char symbol = '\0';             // Literal
  std::vector<RegexAst> children; // Concat: >= 2, Star: 1

  static RegexAst literal(char symbol);
  static RegexAst concat(std::vector<RegexAst> children);
  static RegexAst star(RegexAst child);

  bool operator==(const RegexAst&) const = default;
};

/// Parses e.g. "2(01)*2". Star binds tighter than concatenation; `+` and symbols outside
/// `alphabet` are rejected. Throws SyntaxError.
RegexAst parse_regex(std::string_view text, const Alphabet& alphabet);

/// Minimal-parenthesis form: parentheses only around starred multi-symbol groups.
std::string print_regex(const RegexAst& r);

/// Distinct literal symbols, sorted.
std::string regex_symbols(const RegexAst& r);

}  // namespace formaltrip::syntax
