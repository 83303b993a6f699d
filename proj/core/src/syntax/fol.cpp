#include "formaltrip/syntax/fol.hpp"

#include <algorithm>
#include <set>

#include "formaltrip/common/error.hpp"
#include "logic_lexer.hpp"

namespace formaltrip::syntax {

using detail::Tok;
using detail::Token;

FolNode FolNode::atom(std::string predicate, std::vector<FolTerm> terms) {
  FolNode n;
  n.kind = Kind::Atom;
  n.predicate = std::move(predicate);
  n.terms = std::move(terms);
  return n;
}

FolNode FolNode::negation(FolNode child) {
  FolNode n;
  n.kind = Kind::Not;
  n.children.push_back(std::move(child));
  return n;
}

namespace {

FolNode nary(FolNode::Kind kind, std::vector<FolNode> children) {
  FolNode n;
  n.kind = kind;
  for (auto& c : children) {
    if (c.kind == kind) {
      for (auto& g : c.children) n.children.push_back(std::move(g));
    } else {
      n.children.push_back(std::move(c));
    }
  }
  if (n.children.size() == 1) return std::move(n.children.front());
  return n;
}

class FolParser {
 public:
  explicit FolParser(std::string_view text) : toks_(detail::lex_logic(text, true)) {}

  FolNode parse() {
    if (peek().kind == Tok::End) throw SyntaxError(0, "formula", "empty input");
    FolNode f = parse_or();
    if (peek().kind != Tok::End) {
      throw SyntaxError(peek().pos, "end of input",
                        std::string("found ") + detail::tok_name(peek().kind));
    }
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const Token& take() { return toks_[i_++]; }

  void reject_equality() {
    if (peek().kind == Tok::Equality) {
      throw SyntaxError(peek().pos, "connective", "equality is not part of the language");
    }
  }

  FolNode parse_or() {
    std::vector<FolNode> parts;
    parts.push_back(parse_and());
    while (peek().kind == Tok::Or) {
      take();
      parts.push_back(parse_and());
    }
    reject_equality();
    return parts.size() == 1 ? std::move(parts.front())
                             : nary(FolNode::Kind::Or, std::move(parts));
  }

  FolNode parse_and() {
    std::vector<FolNode> parts;
    parts.push_back(parse_unary());
    while (peek().kind == Tok::And) {
      take();
      parts.push_back(parse_unary());
    }
    reject_equality();
    return parts.size() == 1 ? std::move(parts.front())
                             : nary(FolNode::Kind::And, std::move(parts));
  }

  FolNode parse_unary() {
    switch (peek().kind) {
      case Tok::Not:
        take();
        return FolNode::negation(parse_unary());
      case Tok::Forall:
      case Tok::Exists:
        return parse_quantified();
      default:
        return parse_primary();
    }
  }

  FolNode parse_quantified() {
    const Quantifier q = take().kind == Tok::Forall ? Quantifier::Forall : Quantifier::Exists;
    std::vector<std::string> vars;
    while (peek().kind == Tok::Ident && peek(1).kind != Tok::LParen) {
      vars.push_back(take().text);
    }
    if (vars.empty()) throw SyntaxError(peek().pos, "quantified variable");
    if (peek().kind == Tok::Dot) take();
    // The body extends as far right as possible.
    FolNode body = parse_or();
    return FolNode::quantified(q, std::move(vars), std::move(body));
  }

  FolNode parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      FolNode inner = parse_or();
      if (peek().kind != Tok::RParen) throw SyntaxError(peek().pos, "')'");
      take();
      return inner;
    }
    if (t.kind == Tok::Ident) {
      take();
      std::vector<FolTerm> terms;
      if (peek().kind == Tok::LParen) {
        take();
        for (;;) {
          if (peek().kind != Tok::Ident) throw SyntaxError(peek().pos, "term");
          terms.push_back({FolTerm::Kind::Constant, take().text});
          if (peek().kind == Tok::LParen) {
            throw SyntaxError(peek().pos, "',' or ')'", "function terms are not supported");
          }
          if (peek().kind == Tok::Comma) {
            take();
            continue;
          }
          if (peek().kind != Tok::RParen) throw SyntaxError(peek().pos, "',' or ')'");
          take();
          break;
        }
      }
      reject_equality();
      return FolNode::atom(t.text, std::move(terms));
    }
    if (t.kind == Tok::End) {
      throw SyntaxError(t.pos, "operand", "formula ends with a dangling operator");
    }
    if (t.kind == Tok::Equality) {
      throw SyntaxError(t.pos, "formula", "equality is not part of the language");
    }
    throw SyntaxError(t.pos, "atom, quantifier or '('",
                      std::string("found ") + detail::tok_name(t.kind));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

void classify(FolNode& node, std::vector<std::string>& scope) {
  switch (node.kind) {
    case FolNode::Kind::Atom:
      for (auto& t : node.terms) {
        const bool bound = std::find(scope.begin(), scope.end(), t.name) != scope.end();
        t.kind = bound ? FolTerm::Kind::Variable : FolTerm::Kind::Constant;
      }
      return;
    case FolNode::Kind::Forall:
    case FolNode::Kind::Exists: {
      const std::size_t mark = scope.size();
      scope.insert(scope.end(), node.variables.begin(), node.variables.end());
      classify(node.children.front(), scope);
      scope.resize(mark);
      return;
    }
    default:
      for (auto& c : node.children) classify(c, scope);
  }
}

void check_arity(const FolNode& node, std::map<std::string, std::size_t>& arity) {
  if (node.kind == FolNode::Kind::Atom) {
    auto [it, inserted] = arity.emplace(node.predicate, node.terms.size());
    if (!inserted && it->second != node.terms.size()) {
      throw ArityError(node.predicate, node.terms.size(), it->second);
    }
    return;
  }
  for (const auto& c : node.children) check_arity(c, arity);
}

const char* quantifier_glyph(FolNode::Kind k) {
  return k == FolNode::Kind::Forall ? "\xE2\x88\x80" : "\xE2\x88\x83";
}

void print_node(const FolNode& n, std::string& out, bool top);

void print_quantifier(const FolNode& n, std::string& out) {
  out += quantifier_glyph(n.kind);
  for (const auto& v : n.variables) {
    out += ' ';
    out += v;
  }
  out += ". ";
  print_node(n.children.front(), out, true);
}

void print_node(const FolNode& n, std::string& out, bool top) {
  switch (n.kind) {
    case FolNode::Kind::Atom:
      out += n.predicate;
      if (!n.terms.empty()) {
        out += '(';
        for (std::size_t i = 0; i < n.terms.size(); ++i) {
          if (i) out += ", ";
          out += n.terms[i].name;
        }
        out += ')';
      }
      return;
    case FolNode::Kind::Not:
      out += "\xC2\xAC";
      print_node(n.children.front(), out, false);
      return;
    case FolNode::Kind::And:
    case FolNode::Kind::Or: {
      const char* op = n.kind == FolNode::Kind::And ? " \xE2\x88\xA7 " : " \xE2\x88\xA8 ";
      out += '(';
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += op;
        print_node(n.children[i], out, false);
      }
      out += ')';
      return;
    }
    case FolNode::Kind::Forall:
    case FolNode::Kind::Exists:
      if (top) {
        print_quantifier(n, out);
      } else {
        out += '(';
        print_quantifier(n, out);
        out += ')';
      }
      return;
  }
}

bool contains_quantifier(const FolNode& n) {
  if (n.is_quantifier()) return true;
  return std::any_of(n.children.begin(), n.children.end(), contains_quantifier);
}

template <class Fn>
void for_each_atom(const FolNode& n, Fn&& fn) {
  if (n.kind == FolNode::Kind::Atom) {
    fn(n);
    return;
  }
  for (const auto& c : n.children) for_each_atom(c, fn);
}

}  // namespace

FolNode FolNode::conjunction(std::vector<FolNode> children) {
  return nary(Kind::And, std::move(children));
}

FolNode FolNode::disjunction(std::vector<FolNode> children) {
  return nary(Kind::Or, std::move(children));
}

FolNode FolNode::quantified(Quantifier q, std::vector<std::string> variables, FolNode body) {
  FolNode n;
  n.kind = q == Quantifier::Forall ? Kind::Forall : Kind::Exists;
  n.variables = std::move(variables);
  n.children.push_back(std::move(body));
  return n;
}

bool FolFormula::prenex() const { return !contains_quantifier(matrix); }

void classify_terms(FolNode& node) {
  std::vector<std::string> scope;
  classify(node, scope);
}

FolNode fol_tree(const FolFormula& f) {
  FolNode tree = f.matrix;
  for (auto it = f.prefix.rbegin(); it != f.prefix.rend(); ++it) {
    tree = FolNode::quantified(it->quantifier, it->variables, std::move(tree));
  }
  return tree;
}

FolFormula fol_from_tree(FolNode tree) {
  FolFormula f;
  while (tree.is_quantifier()) {
    f.prefix.push_back({tree.kind == FolNode::Kind::Forall ? Quantifier::Forall
                                                           : Quantifier::Exists,
                        tree.variables});
    FolNode body = std::move(tree.children.front());
    tree = std::move(body);
  }
  f.matrix = std::move(tree);
  return f;
}

FolFormula parse_fol(std::string_view text) {
  FolNode tree = FolParser(text).parse();
  classify_terms(tree);
  std::map<std::string, std::size_t> arity;
  check_arity(tree, arity);
  return fol_from_tree(std::move(tree));
}

std::string print_fol(const FolFormula& f) {
  std::string out;
  for (const auto& block : f.prefix) {
    out += block.quantifier == Quantifier::Forall ? "\xE2\x88\x80" : "\xE2\x88\x83";
    for (const auto& v : block.variables) {
      out += ' ';
      out += v;
    }
    out += ". ";
  }
  print_node(f.matrix, out, true);
  return out;
}

std::map<std::string, std::size_t> fol_predicates(const FolFormula& f) {
  std::map<std::string, std::size_t> out;
  for_each_atom(f.matrix, [&](const FolNode& a) { out.emplace(a.predicate, a.terms.size()); });
  return out;
}

std::vector<std::string> fol_constants(const FolFormula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for_each_atom(f.matrix, [&](const FolNode& a) {
    for (const auto& t : a.terms) {
      if (t.kind == FolTerm::Kind::Constant && seen.insert(t.name).second) out.push_back(t.name);
    }
  });
  return out;
}

std::vector<std::string> fol_atom_terms(const FolFormula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for_each_atom(f.matrix, [&](const FolNode& a) {
    for (const auto& t : a.terms) {
      if (seen.insert(t.name).second) out.push_back(t.name);
    }
  });
  return out;
}

std::vector<std::string> fol_bound_variables(const FolFormula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto add = [&](const std::vector<std::string>& vars) {
    for (const auto& v : vars) {
      if (seen.insert(v).second) out.push_back(v);
    }
  };
  for (const auto& b : f.prefix) add(b.variables);
  std::vector<const FolNode*> stack{&f.matrix};
  while (!stack.empty()) {
    const FolNode* n = stack.back();
    stack.pop_back();
    if (n->is_quantifier()) add(n->variables);
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

}  // namespace formaltrip::syntax
