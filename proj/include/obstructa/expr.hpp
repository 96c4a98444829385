#pragma once

// Dimension expressions of the form coef*n + offset, as in "16n+10" or "8n-5".

#include "obstructa/dyadic.hpp"

#include <string>
#include <string_view>

namespace obstructa {

using Integer = dyadic::Natural;  // signed; same arbitrary-precision type

struct AffineExpr {
    Integer coef = 0;
    Integer offset = 0;

    // Throws DomainError when the value is negative.
    dyadic::Natural eval(const dyadic::Natural& n) const;
    bool is_constant() const { return coef == 0; }

    // "16n+10", "8n-5", "58" for constants.
    std::string to_string() const;
    // Accepts "16n+10", "16n", "n-1", "8n - 5", "58". Throws DomainError.
    static AffineExpr parse(std::string_view text);

    bool operator==(const AffineExpr&) const = default;
};

}  // namespace obstructa
