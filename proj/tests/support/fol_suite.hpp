#pragma once

#include <string>
#include <vector>

namespace suite {

struct FolCase {
  std::string lhs;
  std::string rhs;
  bool equivalent;
};

/// Hand-checked first-order pairs: 20 equivalences then 10 non-equivalences.
const std::vector<FolCase>& fol_cases();

}  // namespace suite
