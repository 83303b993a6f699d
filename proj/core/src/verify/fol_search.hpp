#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "verify/fol_internal.hpp"

namespace formaltrip::verify::detail {

/// First model, over domain sizes 1..max_domain, satisfying f ∧ ¬g or g ∧ ¬f.
std::optional<FiniteModel> search_models(const Fm& f, const Fm& g,
                                         const std::map<std::string, std::size_t>& arities,
                                         std::size_t max_domain,
                                         std::chrono::steady_clock::time_point deadline);

struct GroundResult {
  enum class Status { Sat, Unsat, Timeout };
  Status status = Status::Timeout;
  std::optional<FiniteModel> model;
};

/// Satisfiability of a Skolemized formula whose Skolem symbols are all constants, by
/// propositional grounding over its Herbrand universe. `named` are the constants that
/// appear in the model's constant map.
GroundResult decide_by_grounding(const Skolemized& phi, const std::set<std::string>& named,
                                 const std::map<std::string, std::size_t>& arities,
                                 std::chrono::steady_clock::time_point deadline);

}  // namespace formaltrip::verify::detail
