#pragma once

// Chart renderers. Both take the JSON form produced by ext::chart_to_json and
// draw stems left to right and filtration bottom to top, with h0 as vertical
// segments, h1 as diagonals and towers as upward arrows.

#include "json.hpp"

#include <optional>
#include <string>
#include <utility>

namespace obstructa::render {

struct Window {
    long long stem_lo = 0;
    long long stem_hi = 0;
};

// Character grid. A bidegree holding one class prints 'o', several print their
// count. Rows between filtrations carry '|' for h0 and '/' for h1; '^' sits
// above a tower. Pure function of its input.
std::string chart_text(const nlohmann::json& chart, const std::optional<Window>& window = std::nullopt);

// Self-contained SVG document.
std::string chart_svg(const nlohmann::json& chart, const std::optional<Window>& window = std::nullopt);

}  // namespace obstructa::render
