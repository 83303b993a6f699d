#include "formaltrip/llm/oracle.hpp"

#include <functional>
#include <sstream>
#include <vector>

#include "formaltrip/common/error.hpp"
#include "formaltrip/verify/verify.hpp"

namespace formaltrip::llm {

using syntax::FolNode;
using syntax::FolTerm;
using syntax::Formalism;
using syntax::FormalExpression;
using syntax::PropFormula;
using syntax::RegexAst;

namespace {

std::string wrap(const std::string& s) { return "( " + s + " )"; }

std::string junction(std::string_view head, const std::vector<std::string>& parts) {
  std::string out(head);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out += i ? " and " : " ";
    out += wrap(parts[i]);
  }
  return out;
}

std::string describe_prop(const PropFormula& f) {
  std::vector<std::string> parts;
  for (const auto& c : f.children) parts.push_back(describe_prop(c));
  switch (f.kind) {
    case PropFormula::Kind::Proposition: return "proposition " + f.name;
    case PropFormula::Kind::Not: return "the negation of " + wrap(parts[0]);
    case PropFormula::Kind::And: return junction("the conjunction of", parts);
    case PropFormula::Kind::Or: return junction("the disjunction of", parts);
  }
  return {};
}

std::string variable_list(const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? " and " : "") + vars[i];
  return out;
}

std::string describe_fol(const FolNode& n) {
  std::vector<std::string> parts;
  for (const auto& c : n.children) parts.push_back(describe_fol(c));
  switch (n.kind) {
    case FolNode::Kind::Atom: {
      std::string out = "predicate " + n.predicate;
      if (n.terms.empty()) return out;
      out += " of (";
      for (std::size_t i = 0; i < n.terms.size(); ++i) out += (i ? " , " : " ") + n.terms[i].name;
      return out + " )";
    }
    case FolNode::Kind::Not: return "the negation of " + wrap(parts[0]);
    case FolNode::Kind::And: return junction("the conjunction of", parts);
    case FolNode::Kind::Or: return junction("the disjunction of", parts);
    case FolNode::Kind::Forall:
      return "for all " + variable_list(n.variables) + " it holds that " + wrap(parts[0]);
    case FolNode::Kind::Exists:
      return "there exist " + variable_list(n.variables) + " such that " + wrap(parts[0]);
  }
  return {};
}

std::string describe_regex(const RegexAst& r) {
  std::vector<std::string> parts;
  for (const auto& c : r.children) parts.push_back(describe_regex(c));
  switch (r.kind) {
    case RegexAst::Kind::Literal: return std::string("symbol ") + r.symbol;
    case RegexAst::Kind::Concat: return junction("the concatenation of", parts);
    case RegexAst::Kind::Star: return "zero or more repetitions of " + wrap(parts[0]);
  }
  return {};
}

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::istringstream in{std::string(text)};
    for (std::string t; in >> t;) tokens_.push_back(t);
  }

  bool done() const { return pos_ == tokens_.size(); }
  bool peek(std::string_view t) const { return pos_ < tokens_.size() && tokens_[pos_] == t; }

  const std::string& next(std::string_view what) {
    if (done()) fail(what);
    return tokens_[pos_++];
  }

  void expect(std::string_view phrase) {
    std::istringstream in{std::string(phrase)};
    for (std::string t; in >> t;) {
      if (!peek(t)) fail("'" + t + "'");
      ++pos_;
    }
  }

  template <class T>
  std::vector<T> junction_parts(const std::function<T()>& item) {
    std::vector<T> parts;
    do {
      expect("(");
      parts.push_back(item());
      expect(")");
    } while (peek("and") && (++pos_, true));
    if (parts.size() < 2) fail("a second operand");
    return parts;
  }

  [[noreturn]] void fail(std::string_view what) const {
    throw SyntaxError(pos_, std::string(what), "in oracle description");
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

PropFormula read_prop(Reader& in) {
  const std::string& head = in.next("a description");
  if (head == "proposition") return PropFormula::proposition(in.next("a proposition name"));
  if (head != "the") in.fail("'proposition' or 'the'");
  const std::string& op = in.next("an operator");
  in.expect("of");
  std::function<PropFormula()> item = [&] { return read_prop(in); };
  if (op == "negation") {
    in.expect("(");
    PropFormula c = read_prop(in);
    in.expect(")");
    return PropFormula::negation(std::move(c));
  }
  if (op == "conjunction") return PropFormula::conjunction(in.junction_parts(item));
  if (op == "disjunction") return PropFormula::disjunction(in.junction_parts(item));
  in.fail("negation, conjunction or disjunction");
}

std::vector<std::string> read_variables(Reader& in, std::string_view until) {
  std::vector<std::string> vars{in.next("a variable")};
  while (in.peek("and")) {
    in.expect("and");
    vars.push_back(in.next("a variable"));
  }
  in.expect(until);
  return vars;
}

FolNode read_fol(Reader& in) {
  const std::string& head = in.next("a description");
  std::function<FolNode()> item = [&] { return read_fol(in); };
  auto body = [&] {
    in.expect("(");
    FolNode b = read_fol(in);
    in.expect(")");
    return b;
  };
  if (head == "predicate") {
    std::string name = in.next("a predicate name");
    std::vector<FolTerm> terms;
    if (in.peek("of")) {
      in.expect("of (");
      do {
        terms.push_back({FolTerm::Kind::Constant, in.next("a term")});
      } while (in.peek(",") && (in.expect(","), true));
      in.expect(")");
    }
    return FolNode::atom(std::move(name), std::move(terms));
  }
  if (head == "for") {
    in.expect("all");
    auto vars = read_variables(in, "it holds that");
    return FolNode::quantified(syntax::Quantifier::Forall, std::move(vars), body());
  }
  if (head == "there") {
    in.expect("exist");
    auto vars = read_variables(in, "such that");
    return FolNode::quantified(syntax::Quantifier::Exists, std::move(vars), body());
  }
  if (head != "the") in.fail("a formula description");
  const std::string& op = in.next("an operator");
  in.expect("of");
  if (op == "negation") return FolNode::negation(body());
  if (op == "conjunction") return FolNode::conjunction(in.junction_parts(item));
  if (op == "disjunction") return FolNode::disjunction(in.junction_parts(item));
  in.fail("negation, conjunction or disjunction");
}

RegexAst read_regex(Reader& in) {
  const std::string& head = in.next("a description");
  if (head == "symbol") {
    const std::string& s = in.next("a symbol");
    if (s.size() != 1) in.fail("a single-character symbol");
    return RegexAst::literal(s[0]);
  }
  if (head == "zero") {
    in.expect("or more repetitions of (");
    RegexAst c = read_regex(in);
    in.expect(")");
    return RegexAst::star(std::move(c));
  }
  if (head != "the") in.fail("a regex description");
  in.expect("concatenation of");
  std::function<RegexAst()> item = [&] { return read_regex(in); };
  return RegexAst::concat(in.junction_parts(item));
}

// Visits every node of a tree by mutable reference, in preorder.
template <class Node>
void each_node(Node& n, const std::function<void(Node&)>& f) {
  f(n);
  for (auto& c : n.children) each_node(c, f);
}

template <class Node>
bool flip_connective(Node& root, Rng& rng) {
  std::vector<Node*> sites;
  std::function<void(Node&)> visit = [&](Node& n) {
    if (n.kind == Node::Kind::And || n.kind == Node::Kind::Or) sites.push_back(&n);
  };
  each_node(root, visit);
  if (sites.empty()) return false;
  Node& n = *sites[rng.uniform(sites.size())];
  n.kind = n.kind == Node::Kind::And ? Node::Kind::Or : Node::Kind::And;
  return true;
}

template <class Node>
bool drop_negation(Node& root, Rng& rng) {
  std::vector<Node*> sites;
  std::function<void(Node&)> visit = [&](Node& n) {
    if (n.kind == Node::Kind::Not) sites.push_back(&n);
  };
  each_node(root, visit);
  if (sites.empty()) return false;
  Node& n = *sites[rng.uniform(sites.size())];
  Node child = std::move(n.children[0]);
  n = std::move(child);
  return true;
}

FormalExpression mutate(const FormalExpression& e, Rng& rng) {
  switch (e.formalism) {
    case Formalism::Prop: {
      PropFormula f = e.prop();
      if (!flip_connective(f, rng) && !drop_negation(f, rng)) f = PropFormula::negation(f);
      return syntax::parse_expression(syntax::make_expression(std::move(f)).canonical_text,
                                      Formalism::Prop);
    }
    case Formalism::Fol: {
      FolNode t = syntax::fol_tree(e.fol());
      FolNode* matrix = &t;
      while (matrix->is_quantifier()) matrix = &matrix->children[0];
      if (!flip_connective(*matrix, rng) && !drop_negation(*matrix, rng)) {
        *matrix = FolNode::negation(std::move(*matrix));
      }
      return syntax::parse_expression(
          syntax::make_expression(syntax::fol_from_tree(std::move(t))).canonical_text,
          Formalism::Fol);
    }
    case Formalism::Regex: {
      RegexAst r = e.regex();
      std::vector<RegexAst*> stars;
      std::function<void(RegexAst&)> visit = [&](RegexAst& n) {
        if (n.kind == RegexAst::Kind::Star) stars.push_back(&n);
      };
      each_node(r, visit);
      if (stars.empty()) {
        r = RegexAst::star(std::move(r));
      } else {
        RegexAst& n = *stars[rng.uniform(stars.size())];
        RegexAst child = std::move(n.children[0]);
        n = std::move(child);
      }
      return syntax::parse_expression(syntax::make_expression(std::move(r)).canonical_text,
                                      Formalism::Regex);
    }
  }
  return e;
}

}  // namespace

std::string describe(const FormalExpression& e) {
  switch (e.formalism) {
    case Formalism::Prop: return describe_prop(e.prop());
    case Formalism::Fol: return describe_fol(syntax::fol_tree(e.fol()));
    case Formalism::Regex: return describe_regex(e.regex());
  }
  return {};
}

FormalExpression read_description(std::string_view text, Formalism f,
                                  const syntax::ParseOptions& options) {
  Reader in(text);
  FormalExpression e;
  switch (f) {
    case Formalism::Prop:
      e = syntax::make_expression(read_prop(in));
      break;
    case Formalism::Fol: {
      FolNode tree = read_fol(in);
      syntax::classify_terms(tree);
      e = syntax::make_expression(syntax::fol_from_tree(std::move(tree)));
      break;
    }
    case Formalism::Regex:
      e = syntax::make_expression(read_regex(in));
      break;
  }
  if (!in.done()) in.fail("end of description");
  return syntax::parse_expression(e.canonical_text, f, options);
}


FormalExpression corrupt(const FormalExpression& e, Rng& rng) {
  FormalExpression changed = mutate(e, rng);
  if (verify::verify(e, changed).status != verify::Status::Equivalent) return changed;
  switch (e.formalism) {
    case Formalism::Prop:
      return syntax::parse_expression(
          syntax::make_expression(PropFormula::negation(e.prop())).canonical_text, Formalism::Prop);
    case Formalism::Fol:
      return syntax::parse_expression(
          syntax::make_expression(
              syntax::fol_from_tree(FolNode::negation(syntax::fol_tree(e.fol()))))
              .canonical_text,
          Formalism::Fol);
    case Formalism::Regex: {
      // L·a never equals a nonempty L
      const RegexAst* first = &e.regex();
      while (first->kind != RegexAst::Kind::Literal) first = &first->children[0];
      return syntax::parse_expression(
          syntax::make_expression(RegexAst::concat({e.regex(), RegexAst::literal(first->symbol)}))
              .canonical_text,
          Formalism::Regex);
    }
  }
  return changed;
}

}  // namespace formaltrip::llm
