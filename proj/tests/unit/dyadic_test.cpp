#include "doctest.h"

#include "obstructa/dyadic.hpp"
#include "obstructa/error.hpp"
#include "obstructa/expr.hpp"

#include "properties.hpp"

using namespace obstructa;
using dyadic::Natural;

TEST_SUITE("dyadic")
{
    TEST_CASE("alpha counts binary ones")
    {
        CHECK(dyadic::alpha(Natural(0)) == 0);
        CHECK(dyadic::alpha(Natural(3)) == 2);
        CHECK(dyadic::alpha(Natural(7)) == 3);
        CHECK(dyadic::alpha(std::uint64_t{11}) == 3);
        CHECK(dyadic::alpha((Natural(1) << 200) + 1) == 2);
    }

    TEST_CASE("nu is the exponent of two")
    {
        CHECK(dyadic::nu(Natural(1)) == 0);
        CHECK(dyadic::nu(Natural(8)) == 3);
        CHECK(dyadic::nu(Natural(12)) == 2);
        CHECK(dyadic::nu(Natural(1) << 130) == 130);
        CHECK_THROWS_AS(dyadic::nu(Natural(0)), DomainError);
        CHECK_THROWS_AS(dyadic::nu(Natural(-4)), DomainError);
    }

    TEST_CASE("binomial parity")
    {
        CHECK_FALSE(dyadic::binom_mod2(Natural(50), Natural(6)));
        CHECK(dyadic::binom_mod2(Natural(50), Natural(2)));
        CHECK(dyadic::binom_mod2(Natural(123456789), Natural(0)));
        CHECK_FALSE(dyadic::binom_mod2(Natural(3), Natural(5)));
    }

    TEST_CASE("valuation of binomial coefficients")
    {
        CHECK(dyadic::nu_binom(Natural(27), Natural(13)) == 2);
        CHECK(dyadic::nu_binom(Natural(28), Natural(14)) == 3);
        CHECK(dyadic::nu_binom(Natural(28), Natural(13)) == 4);
        CHECK(dyadic::nu_binom(std::uint64_t{28}, std::uint64_t{13}) == 4);
        CHECK_THROWS_AS(dyadic::nu_binom(Natural(3), Natural(5)), DomainError);
    }

    TEST_CASE("valuation identities hold for every n sampled")
    {
        for (unsigned n = 1; n <= 200; ++n) {
            const Natural N = n;
            CHECK(dyadic::nu_binom(8 * N + 3, 4 * N + 1) == dyadic::alpha(N));
            CHECK(dyadic::nu_binom(4 * N, 2 * N) == dyadic::alpha(N));
        }
    }

    TEST_CASE("arbitrary precision agrees with the 64-bit path")
    {
        const Natural big = (Natural(1) << 100) + 12345;
        CHECK(dyadic::nu_binom(big, Natural(12345)) == 0);
        CHECK(dyadic::nu_binom(big, Natural(1) << 99) == 1);
        CHECK_THROWS_AS(dyadic::to_u64(big), DomainError);
    }

    TEST_CASE("Lucas and Kummer agree for m, k <= 4096")
    {
        CHECK(oracle::lucas_kummer(4096).empty());
    }

    TEST_CASE("Legendre factorial oracle")
    {
        CHECK(oracle::legendre(1024).empty());
    }
}

TEST_SUITE("expr")
{
    TEST_CASE("affine expressions")
    {
        const auto e = AffineExpr::parse("16n+10");
        CHECK(e.eval(3) == 58);
        CHECK(e.to_string() == "16n+10");
        CHECK(AffineExpr::parse("8n - 5").eval(7) == 51);
        CHECK(AffineExpr::parse("n-1").eval(1) == 0);
        CHECK(AffineExpr::parse("58").is_constant());
        CHECK(AffineExpr::parse("16n").to_string() == "16n+0");
        CHECK_THROWS_AS(AffineExpr::parse("8n-5").eval(0), DomainError);
        CHECK_THROWS_AS(AffineExpr::parse("n^2"), DomainError);
        CHECK_THROWS_AS(AffineExpr::parse(""), DomainError);
    }
}
