#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace formaltrip::verify {

enum class Status { Equivalent, NotEquivalent, Unknown };

std::string_view to_string(Status s);
Status status_from_string(std::string_view s);

/// Truth value per proposition name.
using Assignment = std::map<std::string, bool>;

/// Finite interpretation of constants and predicates over the domain {0, ..., size-1}.
/// Relations list the tuples for which the predicate holds.
struct FiniteModel {
  std::size_t domain_size = 0;
  std::map<std::string, std::size_t> constants;
  std::map<std::string, std::size_t> arities;
  std::map<std::string, std::set<std::vector<std::size_t>>> relations;

  bool holds(const std::string& predicate, const std::vector<std::size_t>& args) const;

  bool operator==(const FiniteModel&) const = default;
};

/// Assignment for propositional logic, model for first-order logic, string for regexes.
using Witness = std::variant<std::monostate, Assignment, FiniteModel, std::string>;

struct EquivalenceVerdict {
  Status status = Status::Unknown;
  Witness witness;
  std::string reason;

  bool has_witness() const { return !std::holds_alternative<std::monostate>(witness); }

  bool operator==(const EquivalenceVerdict&) const = default;
};

/// One-line human-readable rendering, e.g. "{p11: true, p8: false}" or "\"01\"".
std::string describe(const Witness& w);

}  // namespace formaltrip::verify
