#include "formaltrip/common/version.hpp"

namespace formaltrip {

std::string_view version() { return FORMALTRIP_VERSION; }

}  // namespace formaltrip
