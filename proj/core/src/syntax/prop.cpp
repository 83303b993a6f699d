#include "formaltrip/syntax/prop.hpp"

#include <cctype>
#include <set>

#include "formaltrip/common/error.hpp"
#include "logic_lexer.hpp"

namespace formaltrip::syntax {

using detail::Tok;
using detail::Token;

PropFormula PropFormula::proposition(std::string name) {
  PropFormula f;
  f.kind = Kind::Proposition;
  f.name = std::move(name);
  return f;
}

PropFormula PropFormula::negation(PropFormula child) {
  PropFormula f;
  f.kind = Kind::Not;
  f.children.push_back(std::move(child));
  return f;
}

namespace {

PropFormula nary(PropFormula::Kind kind, std::vector<PropFormula> children) {
  PropFormula f;
  f.kind = kind;
  for (auto& c : children) {
    if (c.kind == kind) {
      for (auto& g : c.children) f.children.push_back(std::move(g));
    } else {
      f.children.push_back(std::move(c));
    }
  }
  if (f.children.size() == 1) return std::move(f.children.front());
  return f;
}

class PropParser {
 public:
  explicit PropParser(std::string_view text) : toks_(detail::lex_logic(text, false)) {}

  PropFormula parse() {
    if (peek().kind == Tok::End) throw SyntaxError(0, "formula", "empty input");
    PropFormula f = parse_or();
    if (peek().kind != Tok::End) {
      throw SyntaxError(peek().pos, "end of input",
                        std::string("found ") + detail::tok_name(peek().kind));
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }

  PropFormula parse_or() {
    std::vector<PropFormula> parts;
    parts.push_back(parse_and());
    while (peek().kind == Tok::Or) {
      take();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? std::move(parts.front())
                             : nary(PropFormula::Kind::Or, std::move(parts));
  }

  PropFormula parse_and() {
    std::vector<PropFormula> parts;
    parts.push_back(parse_unary());
    while (peek().kind == Tok::And) {
      take();
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? std::move(parts.front())
                             : nary(PropFormula::Kind::And, std::move(parts));
  }

  PropFormula parse_unary() {
    if (peek().kind == Tok::Not) {
      take();
      return PropFormula::negation(parse_unary());
    }
    return parse_primary();
  }

  PropFormula parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        if (std::isdigit(static_cast<unsigned char>(t.text.front()))) {
          throw SyntaxError(t.pos, "proposition", "names cannot start with a digit");
        }
        take();
        return PropFormula::proposition(t.text);
      }
      case Tok::LParen: {
        take();
        PropFormula inner = parse_or();
        if (peek().kind != Tok::RParen) throw SyntaxError(peek().pos, "')'");
        take();
        return inner;
      }
      case Tok::End:
        throw SyntaxError(t.pos, "operand", "formula ends with a dangling operator");
      default:
        throw SyntaxError(t.pos, "proposition or '('",
                          std::string("found ") + detail::tok_name(t.kind));
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

void print_into(const PropFormula& f, std::string& out) {
  switch (f.kind) {
    case PropFormula::Kind::Proposition:
      out += f.name;
      return;
    case PropFormula::Kind::Not:
      out += "\xC2\xAC";
      print_into(f.children.front(), out);
      return;
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or: {
      const char* op = f.kind == PropFormula::Kind::And ? " \xE2\x88\xA7 " : " \xE2\x88\xA8 ";
      out += '(';
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += op;
        print_into(f.children[i], out);
      }
      out += ')';
      return;
    }
  }
}

void collect(const PropFormula& f, std::vector<std::string>& out, std::set<std::string>& seen) {
  if (f.kind == PropFormula::Kind::Proposition) {
    if (seen.insert(f.name).second) out.push_back(f.name);
    return;
  }
  for (const auto& c : f.children) collect(c, out, seen);
}

}  // namespace

PropFormula PropFormula::conjunction(std::vector<PropFormula> children) {
  return nary(Kind::And, std::move(children));
}

PropFormula PropFormula::disjunction(std::vector<PropFormula> children) {
  return nary(Kind::Or, std::move(children));
}

PropFormula parse_prop(std::string_view text) { return PropParser(text).parse(); }

std::string print_prop(const PropFormula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

std::vector<std::string> prop_variables(const PropFormula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect(f, out, seen);
  return out;
}

}  // namespace formaltrip::syntax
