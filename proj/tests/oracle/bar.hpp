#pragma once

// dim Ext_{A(1)}^{s,t}(M, F2) as the homology of the normalized bar complex
// Abar^{(x)s} (x) M with
//   d[a1|...|as]m = sum_i [a1|...|a_i a_{i+1}|...|as]m + [a1|...|a_{s-1}](a_s m),
// which computes Tor^{A(1)}(F2, M), dual to Ext. Ranks come from sparse GF(2)
// elimination.

#include "milnor.hpp"

#include <cstddef>
#include <vector>

namespace oracle {

// Rank of a sparse GF(2) matrix given as rows of sorted column indices.
std::size_t sparse_rank(std::vector<std::vector<std::uint32_t>> rows);

// dims[s][t] for 0 <= s <= s_max, 0 <= t <= t_max.
std::vector<std::vector<std::size_t>> bar_ext(const Module& m, unsigned s_max, unsigned t_max);

}  // namespace oracle
