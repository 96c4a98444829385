#pragma once

#include "obstructa/dyadic.hpp"

#include "json.hpp"

#include <cstdint>
#include <limits>

namespace obstructa {

// Naturals are JSON numbers when they fit 64 bits and decimal strings otherwise.
inline nlohmann::json natural_json(const dyadic::Natural& n)
{
    if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max())
        return n.convert_to<std::uint64_t>();
    return n.str();
}

inline dyadic::Natural natural_from_json(const nlohmann::json& j)
{
    if (j.is_string())
        return dyadic::Natural(j.get<std::string>());
    return dyadic::Natural(j.get<std::uint64_t>());
}

}  // namespace obstructa
