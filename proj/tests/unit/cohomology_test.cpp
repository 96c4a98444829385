#include "doctest.h"

#include "obstructa/adem.hpp"
#include "obstructa/cohomology.hpp"
#include "obstructa/error.hpp"

#include "properties.hpp"

using namespace obstructa;
using namespace obstructa::cohomology;

TEST_SUITE("cohomology")
{
    TEST_CASE("single squares on P^58")
    {
        const auto x50 = CohomologyClass::monomial(58, 50);
        CHECK(sq(6, x50).is_zero());
        CHECK(sq(2, x50) == CohomologyClass::monomial(58, 52));
        for (Degree j = 0; j <= 29; ++j)
            CHECK(sq(1, CohomologyClass::monomial(58, 2 * j)).is_zero());
        CHECK(sq(0, x50) == x50);
        // Sq^j x^j = x^{2j}, past the truncation it vanishes
        CHECK(sq(29, CohomologyClass::monomial(58, 29)) == CohomologyClass::monomial(58, 58));
        CHECK(sq(30, CohomologyClass::monomial(58, 30)).is_zero());
        CHECK(sq(31, CohomologyClass::monomial(58, 30)).is_zero());
    }

    TEST_CASE("Steenrod words apply right to left")
    {
        const auto x51 = CohomologyClass::monomial(58, 51);
        CHECK(sq_word({2, 3}, x51) == CohomologyClass::monomial(58, 56));
        CHECK(sq_word({}, x51) == x51);
        CHECK(sq_word({2, 1}, CohomologyClass::monomial(58, 50)).is_zero());
        CHECK(SteenrodWord({2, 3}).to_string() == "Sq2 Sq3");
        CHECK(SteenrodWord().to_string() == "1");
        CHECK(SteenrodWord({4}).then_after(SteenrodWord({3, 1})) == SteenrodWord({4, 3, 1}));
    }

    TEST_CASE("cup products truncate")
    {
        const auto one = CohomologyClass::one(58);
        CHECK(multiply(CohomologyClass::monomial(58, 52), CohomologyClass::monomial(58, 4)) ==
              CohomologyClass::monomial(58, 56));
        const CohomologyClass c(58, {3, 7, 20});
        CHECK(multiply(c, one) == c);
        CHECK(multiply(CohomologyClass::monomial(58, 30), CohomologyClass::monomial(58, 30)).is_zero());
        CHECK_THROWS_AS(multiply(CohomologyClass(58), CohomologyClass(57)), DomainError);
    }

    TEST_CASE("Stiefel-Whitney classes of multiples of the Hopf bundle")
    {
        CHECK(sw_class({108, 58}, 4) == CohomologyClass::monomial(58, 4));
        CHECK(sw_class({108, 58}, 8) == CohomologyClass::monomial(58, 8));
        CHECK(sw_class({112, 58}, 52).is_zero());
        CHECK(sw_class({112, 58}, 4).is_zero());
        CHECK(sw_class({112, 58}, 8).is_zero());
        // (1 + x)^p with p = 2^k is 1 + x^p
        CHECK(total_sw_class({64, 100}) == CohomologyClass(100, {0, 64}));
    }

    TEST_CASE("Wu formula and Adem relations on projective space")
    {
        // Sq^1 Sq^1 = 0, Sq^1 Sq^2 = Sq^3, Sq^2 Sq^2 = Sq^3 Sq^1
        for (Degree j = 0; j < 60; ++j) {
            const auto x = CohomologyClass::monomial(120, j);
            CHECK(sq_word({1, 1}, x).is_zero());
            CHECK(sq_word({1, 2}, x) == sq(3, x));
            CHECK(sq_word({2, 2}, x) == sq_word({3, 1}, x));
        }
    }

    TEST_CASE("Cartan formula on random classes")
    {
        CHECK(oracle::cartan(2000, 7).empty());
    }
}

TEST_SUITE("adem")
{
    TEST_CASE("reduction to the admissible basis")
    {
        CHECK(adem::to_string(adem::reduce({1, 1})) == "0");
        CHECK(adem::to_string(adem::reduce({1, 2})) == "Sq3");
        CHECK(adem::to_string(adem::reduce({2, 2})) == "Sq3 Sq1");
        CHECK(adem::is_admissible({4, 2, 1}));
        CHECK_FALSE(adem::is_admissible({2, 3}));
        for (const auto& m : adem::reduce({2, 3}))
            CHECK(adem::is_admissible(m));
        CHECK(adem::degree({2, 3}) == 5);
    }
}
