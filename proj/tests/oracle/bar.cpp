#include "bar.hpp"

#include <algorithm>
#include <cstdint>

namespace oracle {

namespace {

using Key = std::uint64_t;

struct Chains {
    std::vector<Key> keys;  // sorted
    unsigned length = 0;

    std::uint32_t index(Key k) const
    {
        return static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin());
    }
};

// Key layout: factors a_1..a_s (3 bits each, a_1 most significant), then 6 bits of module index.
Key encode(const std::vector<unsigned>& factors, std::size_t element)
{
    Key k = 0;
    for (auto a : factors)
        k = k << 3 | a;
    return k << 6 | element;
}

void enumerate(const Module& m, unsigned s, unsigned t, std::vector<unsigned>& prefix, unsigned used,
               std::vector<Key>& out)
{
    if (prefix.size() == s) {
        for (std::size_t i = 0; i < m.dimension(); ++i)
            if (used + m.degrees[i] == t)
                out.push_back(encode(prefix, i));
        return;
    }
    for (unsigned a = 1; a < 8; ++a) {
        const unsigned d = a1_basis()[a].degree();
        if (used + d > t)
            continue;
        prefix.push_back(a);
        enumerate(m, s, t, prefix, used + d, out);
        prefix.pop_back();
    }
}

Chains chains(const Module& m, unsigned s, unsigned t)
{
    Chains c;
    c.length = s;
    std::vector<unsigned> prefix;
    enumerate(m, s, t, prefix, 0, c.keys);
    std::sort(c.keys.begin(), c.keys.end());
    return c;
}

std::vector<std::vector<std::uint32_t>> boundary(const Module& m, const Chains& source, const Chains& target)
{
    const unsigned s = source.length;
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(source.keys.size());
    std::vector<unsigned> factors(s), shorter;
    for (const Key key : source.keys) {
        const std::size_t element = key & 63;
        Key rest = key >> 6;
        for (unsigned i = s; i-- > 0;) {
            factors[i] = rest & 7;
            rest >>= 3;
        }
        std::vector<std::uint32_t> row;
        for (unsigned i = 0; i + 1 < s; ++i) {
            const auto product = a1_product(factors[i], factors[i + 1]);
            for (unsigned c = 1; c < 8; ++c) {
                if (!(product >> c & 1U))
                    continue;
                shorter.assign(factors.begin(), factors.begin() + i);
                shorter.push_back(c);
                shorter.insert(shorter.end(), factors.begin() + i + 2, factors.end());
                row.push_back(target.index(encode(shorter, element)));
            }
        }
        const auto image = m.act[factors[s - 1]][element];
        shorter.assign(factors.begin(), factors.end() - 1);
        for (std::size_t j = 0; j < m.dimension(); ++j)
            if (image >> j & 1U)
                row.push_back(target.index(encode(shorter, j)));
        std::sort(row.begin(), row.end());
        // Cancel repeated entries in pairs.
        std::vector<std::uint32_t> reduced;
        for (std::size_t i = 0; i < row.size();) {
            std::size_t j = i;
            while (j < row.size() && row[j] == row[i])
                ++j;
            if ((j - i) % 2)
                reduced.push_back(row[i]);
            i = j;
        }
        rows.push_back(std::move(reduced));
    }
    return rows;
}

}  // namespace

std::size_t sparse_rank(std::vector<std::vector<std::uint32_t>> rows)
{
    std::uint32_t columns = 0;
    for (const auto& r : rows)
        if (!r.empty())
            columns = std::max(columns, r.back() + 1);
    std::vector<std::int64_t> pivot_row(columns, -1);
    // Short rows first keeps fill-in low.
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });

    std::size_t rank = 0;
    std::vector<std::uint32_t> scratch;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto& row = rows[r];
        while (!row.empty()) {
            const auto p = pivot_row[row.back()];
            if (p < 0) {
                pivot_row[row.back()] = static_cast<std::int64_t>(r);
                ++rank;
                break;
            }
            const auto& other = rows[static_cast<std::size_t>(p)];
            scratch.clear();
            std::set_symmetric_difference(row.begin(), row.end(), other.begin(), other.end(),
                                          std::back_inserter(scratch));
            row.swap(scratch);
        }
    }
    return rank;
}

std::vector<std::vector<std::size_t>> bar_ext(const Module& m, unsigned s_max, unsigned t_max)
{
    std::vector<std::vector<std::size_t>> dims(s_max + 1, std::vector<std::size_t>(t_max + 1, 0));
    for (unsigned t = 0; t <= t_max; ++t) {
        std::vector<Chains> c;
        for (unsigned s = 0; s <= s_max + 1; ++s)
            c.push_back(chains(m, s, t));
        // rank[s] = rank of d_s : C_s -> C_{s-1}
        std::vector<std::size_t> rank(s_max + 3, 0);
        for (unsigned s = 1; s <= s_max + 1; ++s)
            if (!c[s].keys.empty() && !c[s - 1].keys.empty())
                rank[s] = sparse_rank(boundary(m, c[s], c[s - 1]));
        for (unsigned s = 0; s <= s_max; ++s)
            dims[s][t] = c[s].keys.size() - rank[s] - rank[s + 1];
    }
    return dims;
}

}  // namespace oracle
