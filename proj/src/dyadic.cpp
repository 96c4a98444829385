#include "obstructa/dyadic.hpp"

#include "obstructa/error.hpp"

#include <bit>
#include <limits>
#include <string>

namespace obstructa::dyadic {

void require_natural(const Natural& n, const char* what)
{
    if (n < 0)
        throw DomainError(std::string(what) + " must be nonnegative, got " + n.str());
}

Natural alpha(const Natural& n)
{
    require_natural(n, "alpha argument");
    if (n == 0)
        return 0;
    unsigned count = 0;
    const auto top = boost::multiprecision::msb(n);
    for (std::size_t bit = 0; bit <= top; ++bit)
        count += boost::multiprecision::bit_test(n, static_cast<unsigned>(bit)) ? 1 : 0;
    return count;
}

unsigned alpha(std::uint64_t n)
{
    return static_cast<unsigned>(std::popcount(n));
}

Natural nu(const Natural& n)
{
    require_natural(n, "nu argument");
    if (n == 0)
        throw DomainError("nu(0) is undefined: 0 is divisible by every power of 2");
    return static_cast<unsigned>(boost::multiprecision::lsb(n));
}

unsigned nu(std::uint64_t n)
{
    if (n == 0)
        throw DomainError("nu(0) is undefined: 0 is divisible by every power of 2");
    return static_cast<unsigned>(std::countr_zero(n));
}

bool binom_mod2(const Natural& m, const Natural& k)
{
    require_natural(m, "binomial top");
    require_natural(k, "binomial bottom");
    return (m & k) == k;
}

Natural nu_binom(const Natural& m, const Natural& k)
{
    require_natural(m, "binomial top");
    require_natural(k, "binomial bottom");
    if (k > m)
        throw DomainError("nu_binom(" + m.str() + ", " + k.str() + "): k exceeds m, binomial is 0");
    return alpha(k) + alpha(Natural(m - k)) - alpha(m);
}

unsigned nu_binom(std::uint64_t m, std::uint64_t k)
{
    if (k > m)
        throw DomainError("nu_binom(" + std::to_string(m) + ", " + std::to_string(k) +
                          "): k exceeds m, binomial is 0");
    return alpha(k) + alpha(m - k) - alpha(m);
}

std::uint64_t to_u64(const Natural& n)
{
    require_natural(n, "value");
    if (n > std::numeric_limits<std::uint64_t>::max())
        throw DomainError("value " + n.str() + " does not fit a machine degree");
    return n.convert_to<std::uint64_t>();
}

}  // namespace obstructa::dyadic
