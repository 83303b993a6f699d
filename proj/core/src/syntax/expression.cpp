#include "formaltrip/syntax/expression.hpp"

#include "formaltrip/common/error.hpp"

namespace formaltrip::syntax {

std::string_view to_string(Formalism f) {
  switch (f) {
    case Formalism::Prop: return "prop";
    case Formalism::Fol: return "fol";
    case Formalism::Regex: return "regex";
  }
  return "?";
}

Formalism formalism_from_string(std::string_view s) {
  if (s == "prop" || s == "ksat3") return Formalism::Prop;
  if (s == "fol") return Formalism::Fol;
  if (s == "regex") return Formalism::Regex;
  throw ConfigError("unknown formalism '" + std::string(s) + "'");
}

FormalExpression make_expression(PropFormula f) {
  FormalExpression e;
  e.formalism = Formalism::Prop;
  e.canonical_text = print_prop(f);
  e.ast = std::move(f);
  return e;
}

FormalExpression make_expression(FolFormula f) {
  FormalExpression e;
  e.formalism = Formalism::Fol;
  e.canonical_text = print_fol(f);
  e.ast = std::move(f);
  return e;
}

FormalExpression make_expression(RegexAst r) {
  FormalExpression e;
  e.formalism = Formalism::Regex;
  e.canonical_text = print_regex(r);
  e.ast = std::move(r);
  return e;
}

FormalExpression parse_expression(std::string_view text, Formalism formalism,
                                  const ParseOptions& options) {
  switch (formalism) {
    case Formalism::Prop: return make_expression(parse_prop(text));
    case Formalism::Fol: return make_expression(parse_fol(text));
    case Formalism::Regex: return make_expression(parse_regex(text, options.alphabet));
  }
  throw Error("unreachable formalism");
}

std::string print_canonical(const FormalExpression& e) {
  return std::visit(
      [](const auto& ast) -> std::string {
        using T = std::decay_t<decltype(ast)>;
        if constexpr (std::is_same_v<T, PropFormula>) return print_prop(ast);
        else if constexpr (std::is_same_v<T, FolFormula>) return print_fol(ast);
        else return print_regex(ast);
      },
      e.ast);
}

}  // namespace formaltrip::syntax
