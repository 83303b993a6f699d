#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace formaltrip::syntax::detail {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Not,
  And,
  Or,
  Forall,
  Exists,
  Equality,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

/// Shared tokenizer for propositional and first-order text. With `quantifiers` false the
/// words all/forall/exists are ordinary identifiers.
std::vector<Token> lex_logic(std::string_view text, bool quantifiers);

const char* tok_name(Tok t);

}  // namespace formaltrip::syntax::detail
