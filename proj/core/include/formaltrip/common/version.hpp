#pragma once

#include <string_view>

namespace formaltrip {

std::string_view version();

}  // namespace formaltrip
