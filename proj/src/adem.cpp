#include "obstructa/adem.hpp"

#include "obstructa/dyadic.hpp"

#include <map>

namespace obstructa::adem {

bool is_admissible(const Monomial& m)
{
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
        if (m[i] < 2 * m[i + 1])
            return false;
    return true;
}

unsigned degree(const Monomial& m)
{
    unsigned d = 0;
    for (auto a : m)
        d += a;
    return d;
}

void add_into(Element& a, const Element& b)
{
    for (const auto& m : b) {
        auto [it, inserted] = a.insert(m);
        if (!inserted)
            a.erase(it);
    }
}

namespace {

Element reduce_memo(const Monomial& m, std::map<Monomial, Element>& memo)
{
    if (auto it = memo.find(m); it != memo.end())
        return it->second;

    std::size_t i = 0;
    while (i + 1 < m.size() && m[i] >= 2 * m[i + 1])
        ++i;
    if (i + 1 >= m.size())
        return memo[m] = Element{m};

    // Sq^a Sq^b = sum_j C(b-1-j, a-2j) Sq^{a+b-j} Sq^j  for a < 2b.
    const unsigned a = m[i], b = m[i + 1];
    Element out;
    for (unsigned j = 0; 2 * j <= a; ++j) {
        if (!dyadic::binom_mod2(std::uint64_t{b - 1 - j}, std::uint64_t{a - 2 * j}))
            continue;
        Monomial next(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(i));
        next.push_back(a + b - j);
        if (j > 0)
            next.push_back(j);
        next.insert(next.end(), m.begin() + static_cast<std::ptrdiff_t>(i + 2), m.end());
        add_into(out, reduce_memo(next, memo));
    }
    return memo[m] = out;
}

}  // namespace

Element reduce(const Monomial& m)
{
    std::map<Monomial, Element> memo;
    return reduce_memo(m, memo);
}

Element multiply(const Element& a, const Element& b)
{
    std::map<Monomial, Element> memo;
    Element out;
    for (const auto& x : a)
        for (const auto& y : b) {
            Monomial xy = x;
            xy.insert(xy.end(), y.begin(), y.end());
            add_into(out, reduce_memo(xy, memo));
        }
    return out;
}

std::string to_string(const Element& e)
{
    if (e.empty())
        return "0";
    std::string out;
    for (const auto& m : e) {
        if (!out.empty())
            out += " + ";
        if (m.empty()) {
            out += "1";
            continue;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i)
                out += ' ';
            out += "Sq" + std::to_string(m[i]);
        }
    }
    return out;
}

}  // namespace obstructa::adem
