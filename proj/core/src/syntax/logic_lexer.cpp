#include "logic_lexer.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "formaltrip/common/error.hpp"

namespace formaltrip::syntax::detail {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

struct Glyph {
  std::string_view bytes;
  Tok kind;
};

constexpr Glyph kGlyphs[] = {
    {"\xC2\xAC", Tok::Not},         // ¬
    {"\xE2\x88\xBC", Tok::Not},     // ∼
    {"\xE2\x88\xA7", Tok::And},     // ∧
    {"\xE2\x88\xA8", Tok::Or},      // ∨
    {"\xE2\x88\x80", Tok::Forall},  // ∀
    {"\xE2\x88\x83", Tok::Exists},  // ∃
    {"\xE2\x89\xA0", Tok::Equality},// ≠
    {"&&", Tok::And},
    {"||", Tok::Or},
    {"!=", Tok::Equality},
};

}  // namespace

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Not: return "negation";
    case Tok::And: return "conjunction";
    case Tok::Or: return "disjunction";
    case Tok::Forall: return "universal quantifier";
    case Tok::Exists: return "existential quantifier";
    case Tok::Equality: return "equality";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex_logic(std::string_view text, bool quantifiers) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    bool matched = false;
    for (const auto& g : kGlyphs) {
      if (text.substr(i, g.bytes.size()) == g.bytes) {
        out.push_back({g.kind, std::string(g.bytes), i});
        i += g.bytes.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;

    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", i++}); continue;
      case ')': out.push_back({Tok::RParen, ")", i++}); continue;
      case ',': out.push_back({Tok::Comma, ",", i++}); continue;
      case '.': out.push_back({Tok::Dot, ".", i++}); continue;
      case '~':
      case '!': out.push_back({Tok::Not, std::string(1, c), i++}); continue;
      case '&': out.push_back({Tok::And, "&", i++}); continue;
      case '|': out.push_back({Tok::Or, "|", i++}); continue;
      case '=': out.push_back({Tok::Equality, "=", i++}); continue;
      default: break;
    }

    if (c == '\\') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
      const std::string word(text.substr(i + 1, j - i - 1));
      Tok kind;
      if (word == "neg" || word == "lnot") kind = Tok::Not;
      else if (word == "land" || word == "wedge") kind = Tok::And;
      else if (word == "lor" || word == "vee") kind = Tok::Or;
      else if (quantifiers && word == "forall") kind = Tok::Forall;
      else if (quantifiers && word == "exists") kind = Tok::Exists;
      else throw SyntaxError(i, "operator", "unknown command \\" + word);
      out.push_back({kind, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }

    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      const std::string lw = lower(word);
      Tok kind = Tok::Ident;
      if (lw == "not") kind = Tok::Not;
      else if (lw == "and") kind = Tok::And;
      else if (lw == "or") kind = Tok::Or;
      else if (quantifiers && (lw == "all" || lw == "forall")) kind = Tok::Forall;
      else if (quantifiers && lw == "exists") kind = Tok::Exists;
      out.push_back({kind, std::move(word), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // Bare numbers are accepted as object names (some replies use them).
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    throw SyntaxError(i, "formula token", "unexpected character");
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

}  // namespace formaltrip::syntax::detail
