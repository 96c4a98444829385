#pragma once

// The mod-2 cohomology ring H*(P^N) = F2[x]/(x^{N+1}), Steenrod squares on it,
// and Stiefel-Whitney classes of multiples of the Hopf line bundle.

#include "obstructa/dyadic.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace obstructa::cohomology {

using Degree = std::uint64_t;

// A sum of monomials x^d in H*(P^N). Addition is symmetric difference.
class CohomologyClass {
public:
    explicit CohomologyClass(Degree truncation) : truncation_(truncation) {}
    CohomologyClass(Degree truncation, std::initializer_list<Degree> degrees);

    // x^d, or zero when d exceeds the truncation.
    static CohomologyClass monomial(Degree truncation, Degree d);
    static CohomologyClass one(Degree truncation) { return monomial(truncation, 0); }

    Degree truncation() const noexcept { return truncation_; }
    // Sorted ascending, no repeats.
    const std::vector<Degree>& degrees() const noexcept { return degrees_; }
    bool is_zero() const noexcept { return degrees_.empty(); }
    bool contains(Degree d) const;
    // True iff the class is exactly x^d.
    bool is_monomial(Degree d) const { return degrees_.size() == 1 && degrees_[0] == d; }

    // Adds x^d (mod 2); ignored above the truncation.
    void toggle(Degree d);

    CohomologyClass& operator+=(const CohomologyClass& other);
    friend CohomologyClass operator+(CohomologyClass a, const CohomologyClass& b) { return a += b; }
    bool operator==(const CohomologyClass& other) const = default;

    // "0", "x^52", "x^4 + x^56".
    std::string to_string() const;

private:
    Degree truncation_;
    std::vector<Degree> degrees_;
};

// Sq^{k_1} Sq^{k_2} ... Sq^{k_r}, applied right to left. Empty is the identity.
class SteenrodWord {
public:
    SteenrodWord() = default;
    explicit SteenrodWord(std::vector<Degree> factors);
    SteenrodWord(std::initializer_list<Degree> factors) : SteenrodWord(std::vector<Degree>(factors)) {}

    const std::vector<Degree>& factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }
    Degree degree() const noexcept;

    // Concatenation: (*this) composed after `right`.
    SteenrodWord then_after(const SteenrodWord& right) const;

    auto operator<=>(const SteenrodWord&) const = default;
    // "Sq2 Sq3", or "1" for the identity.
    std::string to_string() const;

private:
    std::vector<Degree> factors_;
};

// p times the Hopf line bundle over P^N.
struct BundleData {
    dyadic::Natural multiple;
    Degree base_dim = 0;
};

CohomologyClass sq(Degree k, const CohomologyClass& c);
CohomologyClass sq_word(const SteenrodWord& w, const CohomologyClass& c);
// Throws DomainError when the truncations differ.
CohomologyClass multiply(const CohomologyClass& a, const CohomologyClass& b);

// w_i(p xi) = C(p, i) x^i.
CohomologyClass sw_class(const BundleData& b, Degree i);
// w(p xi) = (1 + x)^p truncated at N.
CohomologyClass total_sw_class(const BundleData& b);

}  // namespace obstructa::cohomology
