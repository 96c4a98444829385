#include "doctest.h"

#include "bar.hpp"
#include "milnor.hpp"
#include "properties.hpp"

#include "obstructa/resolution.hpp"

TEST_SUITE("oracle")
{
    TEST_CASE("Milnor A(1) is associative with 17 left ideals")
    {
        for (unsigned a = 0; a < 8; ++a)
            for (unsigned b = 0; b < 8; ++b)
                for (unsigned c = 0; c < 8; ++c) {
                    unsigned left = 0, right = 0;
                    for (unsigned x = 0; x < 8; ++x) {
                        if (oracle::a1_product(a, b) >> x & 1U)
                            left ^= oracle::a1_product(x, c);
                        if (oracle::a1_product(b, c) >> x & 1U)
                            right ^= oracle::a1_product(a, x);
                    }
                    CHECK(left == right);
                }
        CHECK(oracle::left_ideals().size() == 17);
    }

    TEST_CASE("sparse rank")
    {
        CHECK(oracle::sparse_rank({{0, 1}, {1, 2}, {0, 2}}) == 2);
        CHECK(oracle::sparse_rank({{0}, {}, {0}}) == 1);
        CHECK(oracle::sparse_rank({{0, 3}, {1}, {2, 3}}) == 3);
    }

    TEST_CASE("bar complex of F2 gives the ko pattern")
    {
        oracle::Module f2;
        f2.degrees = {0};
        for (auto& a : f2.act)
            a = {0};
        f2.act[0] = {1};
        const auto dims = oracle::bar_ext(f2, 4, 12);
        CHECK(dims[0][0] == 1);
        CHECK(dims[1][1] == 1);  // h0
        CHECK(dims[1][2] == 1);  // h1
        CHECK(dims[2][4] == 1);  // h1^2
        CHECK(dims[3][7] == 1);  // h0^3 in stem 4
        CHECK(dims[4][12] == 1);  // bottom of the period
    }

    TEST_CASE("cyclic modules agree with the bar complex")
    {
        for (const auto& [name, m] : oracle::module_family()) {
            if (name.find("(x)") != std::string::npos || name.rfind("P_", 0) == 0)
                continue;
            CAPTURE(name);
            CHECK(oracle::ext_matches_bar(name, m, 5, 16).empty());
        }
    }

    TEST_CASE("stunted modules agree with the library's")
    {
        for (unsigned m = 1; m <= 9; ++m) {
            const auto ours = oracle::to_library(oracle::stunted(m, m + 7));
            const auto lib = obstructa::ext::stunted_module(m, m + 7);
            CAPTURE(m);
            REQUIRE(ours.dimension() == lib.dimension());
            const auto a = obstructa::ext::minimal_resolution(ours, 4, m + 12);
            const auto b = obstructa::ext::minimal_resolution(lib, 4, m + 12);
            for (std::size_t s = 0; s <= 4; ++s)
                for (obstructa::ext::Degree t = 0; t <= m + 12; ++t)
                    CHECK(a.ext_dimension(s, t) == b.ext_dimension(s, t));
        }
    }
}
