#pragma once

// Exact binary arithmetic: digit sums, 2-adic valuations, binomial parity.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace obstructa::dyadic {

// Nonnegative arbitrary-precision integer. The sign is checked at every entry point.
// Expression templates off so arithmetic results are ordinary values.
using Natural = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

// Number of ones in the binary expansion.
Natural alpha(const Natural& n);
unsigned alpha(std::uint64_t n);

// Exponent of 2 in n. Throws DomainError for n = 0.
Natural nu(const Natural& n);
unsigned nu(std::uint64_t n);

// C(m, k) mod 2 by Lucas: odd iff every bit of k is a bit of m. Zero for k > m.
bool binom_mod2(const Natural& m, const Natural& k);
constexpr bool binom_mod2(std::uint64_t m, std::uint64_t k) { return (m & k) == k; }

// nu(C(m, k)) = alpha(k) + alpha(m - k) - alpha(m), the number of carries when
// adding k and m - k in base 2. Throws DomainError for k > m.
Natural nu_binom(const Natural& m, const Natural& k);
unsigned nu_binom(std::uint64_t m, std::uint64_t k);

// Checked narrowing for values that index storage (cohomological degrees).
std::uint64_t to_u64(const Natural& n);

// Throws DomainError when n < 0.
void require_natural(const Natural& n, const char* what);

}  // namespace obstructa::dyadic
