#pragma once

// The subalgebra A(1) of the Steenrod algebra generated by Sq1 and Sq2, and
// finite graded modules over it.

#include "obstructa/adem.hpp"
#include "obstructa/cohomology.hpp"
#include "obstructa/f2.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace obstructa::ext {

using Degree = cohomology::Degree;

// Structure of A(1), derived once from the Adem relations: the span of all
// composites of Sq1 and Sq2 is computed degree by degree and the product table
// is read off from reduced products. Nothing is hand-entered.
class A1Algebra {
public:
    static constexpr std::size_t dimension = 8;
    static constexpr unsigned top_degree = 6;

    static const A1Algebra& get();

    // Basis elements are numbered 0..7 in nondecreasing degree; 0 is the unit.
    unsigned degree(std::size_t b) const { return degree_[b]; }
    // Generator word g_1 ... g_r (each 1 or 2) whose product is basis element b.
    const std::vector<unsigned>& word(std::size_t b) const { return word_[b]; }
    // Admissible expansion of basis element b.
    const adem::Element& admissible(std::size_t b) const { return admissible_[b]; }
    // Product of basis elements as a bitmask over the basis.
    std::uint8_t product(std::size_t a, std::size_t b) const { return product_[a][b]; }
    std::uint8_t left_multiply(std::size_t a, std::uint8_t mask) const;
    const std::vector<std::size_t>& in_degree(unsigned d) const;

    static constexpr std::size_t unit = 0;
    std::size_t sq1() const { return sq1_; }
    std::size_t sq2() const { return sq2_; }

    // Coefficients of 1 + t + t^2 + 2t^3 + t^4 + t^5 + t^6.
    std::vector<unsigned> poincare_series() const;

    // Linear relations among generator words in degrees <= 7. Each relation is a
    // list of words (as in `word`) whose sum vanishes in A(1). Degree 7 is one
    // past the top, so these contain the defining relations.
    const std::vector<std::vector<std::vector<unsigned>>>& word_relations() const { return relations_; }

    // Value of a generator word as a bitmask over the basis.
    std::uint8_t evaluate_word(const std::vector<unsigned>& word) const;

    std::string name(std::size_t b) const { return adem::to_string(admissible_[b]); }

private:
    A1Algebra();

    std::array<unsigned, dimension> degree_{};
    std::array<std::vector<unsigned>, dimension> word_;
    std::array<adem::Element, dimension> admissible_;
    std::array<std::array<std::uint8_t, dimension>, dimension> product_{};
    std::vector<std::vector<std::size_t>> by_degree_;
    std::size_t sq1_ = 0, sq2_ = 0;
    std::vector<std::vector<std::vector<unsigned>>> relations_;
};

// A finite graded module over A(1), given by a homogeneous basis (nondecreasing
// degrees) and the actions of Sq1 and Sq2 on each basis element.
class A1Module {
public:
    // Validates that both actions respect the grading and that every word relation
    // of A(1) holds on every basis element. Throws DomainError otherwise.
    A1Module(std::vector<Degree> degrees, std::vector<f2::BitVector> sq1, std::vector<f2::BitVector> sq2,
             std::vector<std::string> names = {});

    std::size_t dimension() const noexcept { return degrees_.size(); }
    Degree degree(std::size_t i) const { return degrees_[i]; }
    const std::vector<Degree>& degrees() const noexcept { return degrees_; }
    Degree bottom() const;
    Degree top() const;
    const std::string& name(std::size_t i) const { return names_[i]; }

    // Basis indices of degree t form the half-open range [first, last).
    std::pair<std::size_t, std::size_t> range(Degree t) const;
    std::size_t dimension(Degree t) const;

    const f2::BitVector& sq1(std::size_t i) const { return sq1_[i]; }
    const f2::BitVector& sq2(std::size_t i) const { return sq2_[i]; }

    // Action of A(1) basis element b on basis element i (global coordinates).
    const f2::BitVector& act(std::size_t b, std::size_t i) const { return action_[b][i]; }
    // Action on a vector of degree t given in local coordinates of degree t; the
    // result is in local coordinates of degree t + deg b.
    f2::BitVector act_local(std::size_t b, Degree t, const f2::BitVector& v) const;

private:
    f2::BitVector apply_word(const std::vector<unsigned>& word, std::size_t i) const;

    std::vector<Degree> degrees_;
    std::vector<f2::BitVector> sq1_, sq2_;
    std::vector<std::string> names_;
    std::array<std::vector<f2::BitVector>, A1Algebra::dimension> action_;
};

// H*(P_m^top): basis x^m..x^top with Sq1 x^j = C(j,1) x^{j+1}, Sq2 x^j = C(j,2) x^{j+2}.
// Throws DomainError when m > top.
A1Module stunted_module(Degree m, Degree top);

// F2 concentrated in degree d.
A1Module trivial_module(Degree d = 0);

// A(1) itself, shifted to start in degree d.
A1Module free_module(Degree d = 0);

}  // namespace obstructa::ext
