#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "formaltrip/syntax/fol.hpp"
#include "formaltrip/syntax/prop.hpp"
#include "formaltrip/syntax/regex.hpp"

namespace formaltrip::syntax {

enum class Formalism { Prop, Fol, Regex };

std::string_view to_string(Formalism f);
/// Accepts "prop", "fol", "regex" (and "ksat3" as prop). Throws ConfigError.
Formalism formalism_from_string(std::string_view s);

/// A parsed formal expression together with its canonical text.
struct FormalExpression {
  Formalism formalism = Formalism::Prop;
  std::variant<PropFormula, FolFormula, RegexAst> ast;
  std::string canonical_text;

  const PropFormula& prop() const { return std::get<PropFormula>(ast); }
  const FolFormula& fol() const { return std::get<FolFormula>(ast); }
  const RegexAst& regex() const { return std::get<RegexAst>(ast); }

  bool operator==(const FormalExpression& o) const {
    return formalism == o.formalism && ast == o.ast;
  }
};

FormalExpression make_expression(PropFormula f);
FormalExpression make_expression(FolFormula f);
FormalExpression make_expression(RegexAst r);

struct ParseOptions {
  /// Symbol set for regexes; the open alphabet accepts any ASCII letter or digit.
  Alphabet alphabet = Alphabet::open();
};

/// Parses `text` under the given formalism. Throws SyntaxError / ArityError.
FormalExpression parse_expression(std::string_view text, Formalism formalism,
                                  const ParseOptions& options = {});

std::string print_canonical(const FormalExpression& e);

}  // namespace formaltrip::syntax
