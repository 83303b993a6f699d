#include "formaltrip/verify/verify.hpp"

#include "formaltrip/common/error.hpp"

namespace formaltrip::verify {

EquivalenceVerdict verify(const syntax::FormalExpression& a, const syntax::FormalExpression& b,
                          const VerifierOptions& options) {
  if (a.formalism != b.formalism) {
    throw Error("cannot compare " + std::string(syntax::to_string(a.formalism)) + " with " +
                std::string(syntax::to_string(b.formalism)));
  }
  switch (a.formalism) {
    case syntax::Formalism::Prop:
      return equivalent_prop(a.prop(), b.prop(), options.prop);
    case syntax::Formalism::Fol:
      return equivalent_fol(a.fol(), b.fol(), options.fol);
    case syntax::Formalism::Regex:
      return equivalent_regex(a.regex(), b.regex(), options.alphabet);
  }
  return {};
}

syntax::ComplexityProfile full_profile(const syntax::FormalExpression& e,
                                       const syntax::Alphabet& alphabet,
                                       const DfaMetricOptions& options) {
  syntax::ComplexityProfile p = syntax::complexity(e);
  if (e.formalism == syntax::Formalism::Regex) {
    const DfaMetrics m = dfa_metrics(canonical_dfa(e.regex(), alphabet), options);
    p.dfa_nodes = m.nodes;
    p.dfa_edges = m.edges;
    p.dfa_density = m.density;
  }
  return p;
}

}  // namespace formaltrip::verify
