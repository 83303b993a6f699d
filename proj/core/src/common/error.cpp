#include "formaltrip/common/error.hpp"

namespace formaltrip {

namespace {
std::string syntax_message(std::size_t position, const std::string& expected,
                           const std::string& detail) {
  std::string msg = "syntax error at offset " + std::to_string(position) +
                    ": expected " + expected;
  if (!detail.empty()) msg += " (" + detail + ")";
  return msg;
}
}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::string expected, std::string detail)
    : Error(syntax_message(position, expected, detail)),
      position_(position),
      expected_(std::move(expected)) {}

ArityError::ArityError(std::string predicate, std::size_t seen, std::size_t expected)
    : Error("predicate '" + predicate + "' used with arity " + std::to_string(seen) +
            " but earlier with arity " + std::to_string(expected)),
      predicate_(std::move(predicate)),
      seen_(seen),
      expected_(expected) {}

}  // namespace formaltrip
