#pragma once

#include "formaltrip/syntax/complexity.hpp"
#include "formaltrip/syntax/expression.hpp"
#include "formaltrip/verify/fol.hpp"
#include "formaltrip/verify/prop.hpp"
#include "formaltrip/verify/regex.hpp"
#include "formaltrip/verify/verdict.hpp"

namespace formaltrip::verify {

struct VerifierOptions {
  PropOptions prop;
  FolOptions fol;
  /// Regex alphabet; the literals of both inputs are always added.
  syntax::Alphabet alphabet = syntax::Alphabet::open();
  DfaMetricOptions dfa;
};

/// Dispatches on the formalism. Throws Error when the two formalisms differ.
EquivalenceVerdict verify(const syntax::FormalExpression& a, const syntax::FormalExpression& b,
                          const VerifierOptions& options = {});

/// complexity() plus, for regexes, the metrics of the canonical DFA over `alphabet`.
syntax::ComplexityProfile full_profile(const syntax::FormalExpression& e,
                                       const syntax::Alphabet& alphabet,
                                       const DfaMetricOptions& options = {});

}  // namespace formaltrip::verify
