#pragma once

#include <cstddef>
#include <string>

#include "formaltrip/common/error.hpp"
#include "formaltrip/syntax/prop.hpp"
#include "formaltrip/verify/verdict.hpp"

namespace formaltrip::verify {

class MissingVariable : public Error {
 public:
  explicit MissingVariable(std::string name)
      : Error("assignment has no value for '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

bool eval_prop(const syntax::PropFormula& f, const Assignment& a);

struct PropOptions {
  /// Largest variable count decided by truth table; above it a SAT search on f ⊕ g runs.
  std::size_t exhaustive_limit = 20;
};

/// Decides equivalence over the union of both variable sets. Never returns Unknown.
/// The truth-table witness is the first differing row, with the sorted variables as the
/// bits of the row index (first variable lowest).
EquivalenceVerdict equivalent_prop(const syntax::PropFormula& f, const syntax::PropFormula& g,
                                   const PropOptions& options = {});

}  // namespace formaltrip::verify
