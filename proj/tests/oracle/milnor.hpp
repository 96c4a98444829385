#pragma once

// A(1) in the Milnor basis Sq(r1, r2), 0 <= r1 <= 3, 0 <= r2 <= 1, with products
// from the Milnor product formula, and modules described by their Milnor-basis
// actions. Shares no code with the library.

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

struct Milnor {
    unsigned r1 = 0;
    unsigned r2 = 0;
    unsigned degree() const { return r1 + 3 * r2; }
};

// Basis elements 0..7; 0 is the unit, ordered by degree.
const std::array<Milnor, 8>& a1_basis();
// Product of basis elements as a bitmask over the basis.
std::uint8_t a1_product(std::size_t a, std::size_t b);
std::size_t a1_index(unsigned r1, unsigned r2);

// Finite graded module. act[b][i] is the bitmask of Sq-basis element b applied to
// basis element i (at most 64 basis elements).
struct Module {
    std::vector<unsigned> degrees;
    std::array<std::vector<std::uint64_t>, 8> act;

    std::size_t dimension() const { return degrees.size(); }
};

// Checks a(bm) = (ab)m for all basis elements and the grading.
bool is_module(const Module& m);

// H*(P_m^top) with Sq(r1, r2) x^j = multinomial(j; j - r1 - r2, r1, r2) x^{j + r1 + 3 r2}.
Module stunted(unsigned m, unsigned top);

// M (x) N with the diagonal action from the Milnor coproduct
// Sq(R) -> sum_{R' + R'' = R} Sq(R') (x) Sq(R'').
Module tensor(const Module& a, const Module& b);

// A graded left ideal, as a spanning set of vectors (bitmasks over the basis).
using Ideal = std::vector<std::uint8_t>;

// A(1)/L.
Module cyclic(const Ideal& ideal);

// Every graded left ideal of A(1) inside the augmentation ideal, found by
// testing each graded subspace for closure.
std::vector<Ideal> left_ideals();

}  // namespace oracle
