#pragma once

// Property checks shared by the unit tests and the acceptance runner. Each
// returns a list of failures; empty means the property holds.

#include "milnor.hpp"

#include "obstructa/a1.hpp"
#include "obstructa/resolution.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Failures = std::vector<std::string>;

// binom_mod2(m, k) agrees with nu_binom(m, k) == 0 for 0 <= k <= m <= limit.
Failures lucas_kummer(std::uint64_t limit);

// nu_binom(m, k) equals Legendre's nu(m!) - nu(k!) - nu((m-k)!) for m <= limit.
Failures legendre(std::uint64_t limit);

// Sq^k(ab) = sum_i Sq^i(a) Sq^{k-i}(b) on random classes of H*(P^N).
Failures cartan(std::size_t cases, std::uint64_t seed);

// d o d = 0, exactness at every F_s below the ceiling, surjectivity onto M, and
// minimality (no boundary has a unit coefficient).
Failures check_resolution(const obstructa::ext::Resolution& r);

// ko_order_detail(i, m) is unchanged when the module top grows by 8 and 16.
Failures truncation_stable(std::uint64_t i, std::uint64_t m);

// stunted_chart agrees with the chart of a module 8 and 16 degrees taller.
Failures chart_truncation_stable(std::uint64_t m, std::uint64_t stem_hi);

// The library's module for an oracle module (basis reordered by degree).
obstructa::ext::A1Module to_library(const Module& m);

// Every cyclic module, every tensor product of two nontrivial cyclic modules
// with at most 12 basis elements, and every stunted module P_m^{m+k-1} with
// 1 <= m <= 16 and 1 <= k <= 12.
std::vector<std::pair<std::string, Module>> module_family();

// Engine Ext dimensions against bar-complex homology for one module.
Failures ext_matches_bar(const std::string& name, const Module& m, unsigned s_max, unsigned t_max);

}  // namespace oracle
