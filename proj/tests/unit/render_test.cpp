#include "doctest.h"

#include "obstructa/error.hpp"
#include "obstructa/render.hpp"
#include "obstructa/resolution.hpp"

#include <fstream>
#include <sstream>

using namespace obstructa;

namespace {

std::string slurp(const std::string& name)
{
    std::ifstream in(std::string(OBSTRUCTA_GOLDEN_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count(const std::string& text, const std::string& what)
{
    std::size_t n = 0;
    for (auto p = text.find(what); p != std::string::npos; p = text.find(what, p + 1))
        ++n;
    return n;
}

}  // namespace

TEST_SUITE("render")
{
    TEST_CASE("text golden: hand-built chart")
    {
        const auto chart = nlohmann::json::parse(slurp("small_chart.json"));
        CHECK(render::chart_text(chart) == slurp("small_chart.txt"));
    }

    TEST_CASE("text golden: P_49 through stem 57")
    {
        const auto computed = ext::chart_to_json(ext::stunted_chart(49, 57));
        CHECK(computed == nlohmann::json::parse(slurp("p49_chart.json")));
        CHECK(render::chart_text(computed, render::Window{48, 57}) == slurp("p49_chart.txt"));
    }

    TEST_CASE("svg is a well-formed standalone document")
    {
        const auto chart = nlohmann::json::parse(slurp("small_chart.json"));
        const auto svg = render::chart_svg(chart);
        CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(count(svg, "<circle") == 1 + 1 + 1 + 12 + 3);
        CHECK(count(svg, "marker-end=\"url(#arrow)\"") == 1);
        CHECK(svg == render::chart_svg(chart));
    }

    TEST_CASE("window restricts the drawn stems")
    {
        const auto chart = nlohmann::json::parse(slurp("small_chart.json"));
        const auto text = render::chart_text(chart, render::Window{2, 3});
        CHECK(text.find('^') == std::string::npos);
        CHECK(text.find("2   3") != std::string::npos);
        CHECK_THROWS_AS(render::chart_text(chart, render::Window{3, 2}), DomainError);
        CHECK_THROWS_AS(render::chart_text(nlohmann::json::object()), Error);
    }
}
