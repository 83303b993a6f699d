#include "formaltrip/verify/verdict.hpp"

#include "formaltrip/common/error.hpp"

namespace formaltrip::verify {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Equivalent:
      return "equivalent";
    case Status::NotEquivalent:
      return "not_equivalent";
    case Status::Unknown:
      return "unknown";
  }
  return "unknown";
}

Status status_from_string(std::string_view s) {
  if (s == "equivalent") return Status::Equivalent;
  if (s == "not_equivalent") return Status::NotEquivalent;
  if (s == "unknown") return Status::Unknown;
  throw Error("unknown verdict status '" + std::string(s) + "'");
}

bool FiniteModel::holds(const std::string& predicate,
                        const std::vector<std::size_t>& args) const {
  auto it = relations.find(predicate);
  return it != relations.end() && it->second.count(args) > 0;
}

std::string describe(const Witness& w) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "none"; }
    std::string operator()(const Assignment& a) const {
      std::string out = "{";
      for (const auto& [name, value] : a) {
        if (out.size() > 1) out += ", ";
        out += name + ": " + (value ? "true" : "false");
      }
      return out + "}";
    }
    std::string operator()(const FiniteModel& m) const {
      std::string out = "domain {";
      for (std::size_t i = 0; i < m.domain_size; ++i) {
        if (i) out += ",";
        out += std::to_string(i);
      }
      out += "}";
      for (const auto& [c, v] : m.constants) out += "; " + c + "=" + std::to_string(v);
      for (const auto& [p, arity] : m.arities) {
        out += "; " + p + "={";
        bool first = true;
        auto rel = m.relations.find(p);
        if (rel != m.relations.end()) {
          for (const auto& tuple : rel->second) {
            if (!first) out += ",";
            first = false;
            out += "(";
            for (std::size_t i = 0; i < tuple.size(); ++i) {
              if (i) out += ",";
              out += std::to_string(tuple[i]);
            }
            out += ")";
          }
        }
        out += "}";
      }
      return out;
    }
    std::string operator()(const std::string& s) const { return "\"" + s + "\""; }
  };
  return std::visit(Visitor{}, w);
}

}  // namespace formaltrip::verify
