#pragma once

#include <string>
#include <string_view>

#include "formaltrip/common/rng.hpp"
#include "formaltrip/syntax/expression.hpp"

namespace formaltrip::llm {

/// Parenthesis-explicit English rendering that read_description() inverts exactly, e.g.
/// "the conjunction of ( proposition p1 ) and ( the negation of ( proposition p2 ) )".
std::string describe(const syntax::FormalExpression& e);

/// Inverse of describe(). Throws SyntaxError on text describe() cannot produce.
syntax::FormalExpression read_description(std::string_view text, syntax::Formalism f,
                                          const syntax::ParseOptions& options = {});

/// Changes one operator: a uniformly chosen ∧/∨ node flips to the other connective; with
/// none, a negation is dropped, or the whole formula negated. Regexes lose a uniformly
/// chosen star, or gain one around the whole expression. When the verifier finds the
/// result still equivalent, the formula is negated or a regex gains a trailing symbol.
syntax::FormalExpression corrupt(const syntax::FormalExpression& e, Rng& rng);

}  // namespace formaltrip::llm
