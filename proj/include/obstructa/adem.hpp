#pragma once

// Products in the mod-2 Steenrod algebra, reduced to the admissible basis with
// the Adem relations. Used to derive the structure of A(1); degrees stay small.

#include <set>
#include <string>
#include <vector>

namespace obstructa::adem {

// Sq^{a_1} ... Sq^{a_r}, all a_i >= 1. The empty monomial is the unit.
using Monomial = std::vector<unsigned>;
// F2-linear combination of monomials.
using Element = std::set<Monomial>;

bool is_admissible(const Monomial& m);
unsigned degree(const Monomial& m);

// Rewrites an arbitrary composite in the admissible basis.
Element reduce(const Monomial& m);
Element multiply(const Element& a, const Element& b);
// XOR-accumulate b into a.
void add_into(Element& a, const Element& b);

// "Sq4 Sq1 + Sq5", "1", "0".
std::string to_string(const Element& e);

}  // namespace obstructa::adem
