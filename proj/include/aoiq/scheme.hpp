#pragma once

#include <string>
#include <string_view>

#include "aoiq/errors.hpp"

namespace aoiq {

enum class Scheme { MG11, MG12Star };

inline std::string to_string(Scheme s) { return s == Scheme::MG11 ? "mg11" : "mg12star"; }

inline Scheme parse_scheme(std::string_view s) {
    if (s == "mg11") return Scheme::MG11;
    if (s == "mg12star") return Scheme::MG12Star;
    throw UsageError("unknown scheme '" + std::string(s) + "' (expected mg11 or mg12star)");
}

}  // namespace aoiq
