#include "milnor.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

namespace {

// Multinomial coefficient of pairwise-disjoint binary digits is odd.
bool disjoint(std::initializer_list<unsigned> xs)
{
    unsigned seen = 0;
    for (auto x : xs) {
        if (seen & x)
            return false;
        seen |= x;
    }
    return true;
}

std::array<std::array<std::uint8_t, 8>, 8> build_products()
{
    const auto& basis = a1_basis();
    std::array<std::array<std::uint8_t, 8>, 8> table{};
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) {
            const unsigned r1 = basis[a].r1, r2 = basis[a].r2;
            const unsigned s1 = basis[b].r1, s2 = basis[b].r2;
            std::uint8_t out = 0;
            // x_ij for i, j >= 1; row i sums 2^j x_ij to r_i, column j sums x_ij to s_j.
            for (unsigned x11 = 0; 2 * x11 <= r1 && x11 <= s1; ++x11)
                for (unsigned x12 = 0; 2 * x11 + 4 * x12 <= r1 && x12 <= s2; ++x12)
                    for (unsigned x21 = 0; 2 * x21 <= r2 && x11 + x21 <= s1; ++x21)
                        for (unsigned x22 = 0; 2 * x21 + 4 * x22 <= r2 && x12 + x22 <= s2; ++x22) {
                            const unsigned x10 = r1 - 2 * x11 - 4 * x12;
                            const unsigned x20 = r2 - 2 * x21 - 4 * x22;
                            const unsigned x01 = s1 - x11 - x21;
                            const unsigned x02 = s2 - x12 - x22;
                            if (!disjoint({x10, x01}) || !disjoint({x20, x11, x02}) || !disjoint({x21, x12}))
                                continue;
                            const unsigned t1 = x10 + x01, t2 = x20 + x11 + x02, t3 = x21 + x12, t4 = x22;
                            if (t3 || t4 || t1 > 3 || t2 > 1)
                                throw std::logic_error("Milnor product left A(1)");
                            out ^= static_cast<std::uint8_t>(1U << a1_index(t1, t2));
                        }
            table[a][b] = out;
        }
    return table;
}

std::uint8_t multiply(std::size_t a, std::uint8_t v)
{
    std::uint8_t out = 0;
    for (std::size_t b = 0; b < 8; ++b)
        if (v >> b & 1U)
            out ^= a1_product(a, b);
    return out;
}

int top_bit(unsigned v)
{
    return v ? 31 - __builtin_clz(v) : -1;
}

// Echelon form keyed by the highest set bit.
struct Span {
    std::array<std::uint8_t, 8> row{};
    std::uint8_t pivots = 0;

    std::uint8_t reduce(std::uint8_t v) const
    {
        for (int b = 7; b >= 0; --b)
            if ((v >> b & 1U) && (pivots >> b & 1U))
                v ^= row[b];
        return v;
    }
    void insert(std::uint8_t v)
    {
        v = reduce(v);
        if (!v)
            return;
        const int b = top_bit(v);
        row[b] = v;
        pivots |= static_cast<std::uint8_t>(1U << b);
    }
};

}  // namespace

const std::array<Milnor, 8>& a1_basis()
{
    static const std::array<Milnor, 8> basis{
        Milnor{0, 0}, Milnor{1, 0}, Milnor{2, 0}, Milnor{3, 0}, Milnor{0, 1}, Milnor{1, 1}, Milnor{2, 1}, Milnor{3, 1}};
    return basis;
}

std::size_t a1_index(unsigned r1, unsigned r2)
{
    return r2 * 4 + r1;
}

std::uint8_t a1_product(std::size_t a, std::size_t b)
{
    static const auto table = build_products();
    return table[a][b];
}

bool is_module(const Module& m)
{
    const auto apply = [&](std::size_t a, std::uint64_t v) {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < m.dimension(); ++i)
            if (v >> i & 1U)
                out ^= m.act[a][i];
        return out;
    };
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        if (m.act[0][i] != (std::uint64_t{1} << i))
            return false;
        for (std::size_t a = 0; a < 8; ++a) {
            for (std::size_t j = 0; j < m.dimension(); ++j)
                if ((m.act[a][i] >> j & 1U) && m.degrees[j] != m.degrees[i] + a1_basis()[a].degree())
                    return false;
            for (std::size_t b = 0; b < 8; ++b) {
                std::uint64_t lhs = apply(a, m.act[b][i]);
                std::uint64_t rhs = 0;
                const auto ab = a1_product(a, b);
                for (std::size_t c = 0; c < 8; ++c)
                    if (ab >> c & 1U)
                        rhs ^= m.act[c][i];
                if (lhs != rhs)
                    return false;
            }
        }
    }
    return true;
}

Module stunted(unsigned m, unsigned top)
{
    Module out;
    for (unsigned j = m; j <= top; ++j)
        out.degrees.push_back(j);
    for (std::size_t a = 0; a < 8; ++a) {
        const auto [r1, r2] = a1_basis()[a];
        out.act[a].assign(out.dimension(), 0);
        for (unsigned j = m; j <= top; ++j) {
            if (r1 + r2 > j || !disjoint({j - r1 - r2, r1, r2}))
                continue;
            const unsigned d = j + r1 + 3 * r2;
            if (d <= top)
                out.act[a][j - m] = std::uint64_t{1} << (d - m);
        }
    }
    return out;
}

Module tensor(const Module& a, const Module& b)
{
    Module out;
    for (std::size_t i = 0; i < a.dimension(); ++i)
        for (std::size_t j = 0; j < b.dimension(); ++j)
            out.degrees.push_back(a.degrees[i] + b.degrees[j]);
    const auto& basis = a1_basis();
    for (std::size_t r = 0; r < 8; ++r) {
        out.act[r].assign(out.dimension(), 0);
        for (std::size_t x = 0; x < 8; ++x)
            for (std::size_t y = 0; y < 8; ++y) {
                if (basis[x].r1 + basis[y].r1 != basis[r].r1 || basis[x].r2 + basis[y].r2 != basis[r].r2)
                    continue;
                for (std::size_t i = 0; i < a.dimension(); ++i)
                    for (std::size_t j = 0; j < b.dimension(); ++j)
                        for (std::size_t k = 0; k < a.dimension(); ++k)
                            if (a.act[x][i] >> k & 1U)
                                for (std::size_t l = 0; l < b.dimension(); ++l)
                                    if (b.act[y][j] >> l & 1U)
                                        out.act[r][i * b.dimension() + j] ^= std::uint64_t{1}
                                                                              << (k * b.dimension() + l);
            }
    }
    return out;
}

Module cyclic(const Ideal& ideal)
{
    Span span;
    for (auto v : ideal)
        span.insert(v);
    std::vector<std::size_t> kept;  // basis elements surviving in the quotient
    for (std::size_t b = 0; b < 8; ++b)
        if (!(span.pivots >> b & 1U))
            kept.push_back(b);

    Module out;
    for (auto b : kept)
        out.degrees.push_back(a1_basis()[b].degree());
    for (std::size_t a = 0; a < 8; ++a) {
        out.act[a].assign(kept.size(), 0);
        for (std::size_t i = 0; i < kept.size(); ++i) {
            const auto v = span.reduce(a1_product(a, kept[i]));
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (v >> kept[j] & 1U)
                    out.act[a][i] |= std::uint64_t{1} << j;
        }
    }
    return out;
}

std::vector<Ideal> left_ideals()
{
    // Graded pieces of the augmentation ideal; degree 3 is two-dimensional.
    std::vector<std::vector<Ideal>> choices;
    for (unsigned d = 1; d <= 6; ++d) {
        std::vector<std::uint8_t> piece;
        for (std::size_t b = 0; b < 8; ++b)
            if (a1_basis()[b].degree() == d)
                piece.push_back(static_cast<std::uint8_t>(1U << b));
        std::vector<Ideal> options{{}};
        if (piece.size() == 1) {
            options.push_back(piece);
        } else {
            options.push_back({piece[0]});
            options.push_back({piece[1]});
            options.push_back({static_cast<std::uint8_t>(piece[0] | piece[1])});
            options.push_back(piece);
        }
        choices.push_back(options);
    }

    std::vector<Ideal> out;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        Ideal candidate;
        for (std::size_t d = 0; d < choices.size(); ++d)
            for (auto v : choices[d][pick[d]])
                candidate.push_back(v);
        Span span;
        for (auto v : candidate)
            span.insert(v);
        bool closed = true;
        for (auto v : candidate)
            for (std::size_t a = 1; a < 8 && closed; ++a)
                closed = span.reduce(multiply(a, v)) == 0;
        if (closed)
            out.push_back(candidate);

        std::size_t d = 0;
        while (d < pick.size() && ++pick[d] == choices[d].size())
            pick[d++] = 0;
        if (d == pick.size())
            break;
    }
    return out;
}

}  // namespace oracle
