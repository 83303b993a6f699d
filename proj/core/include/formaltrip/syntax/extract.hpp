#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "formaltrip/syntax/expression.hpp"

namespace formaltrip::syntax {

/// Reply from which no formal expression could be recovered.
struct NonCompliant {
  std::string reason;
};

using Extraction = std::variant<FormalExpression, NonCompliant>;

/// Recovers a formal expression from a free-form reply.
///
/// Code fences, LaTeX `$` delimiters, backticks, quotes, "label:" prefixes and trailing
/// periods are stripped. Lines are scanned from the last to the first and the first line
/// holding a parseable candidate wins; within a line the longest parseable candidate is
/// taken. Spans cut out of prose must contain a symbolic operator, so the word aliases
/// and/or/not only count when the whole line parses. Never throws.
Extraction extract_formal(std::string_view text, Formalism formalism,
                          const ParseOptions& options = {});

inline bool is_compliant(const Extraction& x) {
  return std::holds_alternative<FormalExpression>(x);
}

}  // namespace formaltrip::syntax
