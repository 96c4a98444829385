#include "obstructa/expr.hpp"

#include "obstructa/error.hpp"

#include <cctype>

namespace obstructa {

dyadic::Natural AffineExpr::eval(const dyadic::Natural& n) const
{
    dyadic::require_natural(n, "n");
    Integer v = coef * n + offset;
    if (v < 0)
        throw DomainError("expression " + to_string() + " is negative at n = " + n.str());
    return v;
}

std::string AffineExpr::to_string() const
{
    if (coef == 0)
        return offset.str();
    std::string out = coef.str() + "n";
    out += offset < 0 ? "-" : "+";
    out += (offset < 0 ? Integer(-offset) : offset).str();
    return out;
}

AffineExpr AffineExpr::parse(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    const auto fail = [&] { return DomainError("malformed dimension expression '" + std::string(text) + "'"); };
    if (s.empty())
        throw fail();

    AffineExpr e;
    std::size_t pos = 0;
    const auto read_int = [&](std::size_t& p) {
        const std::size_t start = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])))
            ++p;
        return s.substr(start, p - start);
    };

    const auto n_pos = s.find('n');
    if (n_pos == std::string::npos) {
        bool negative = false;
        if (s[pos] == '-' || s[pos] == '+')
            negative = s[pos++] == '-';
        auto digits = read_int(pos);
        if (digits.empty() || pos != s.size())
            throw fail();
        e.offset = Integer(digits);
        if (negative)
            e.offset = -e.offset;
        return e;
    }

    auto coef = read_int(pos);
    if (pos != n_pos)
        throw fail();
    e.coef = coef.empty() ? Integer(1) : Integer(coef);
    pos = n_pos + 1;
    if (pos == s.size())
        return e;
    if (s[pos] != '+' && s[pos] != '-')
        throw fail();
    const bool negative = s[pos++] == '-';
    auto digits = read_int(pos);
    if (digits.empty() || pos != s.size())
        throw fail();
    e.offset = Integer(digits);
    if (negative)
        e.offset = -e.offset;
    return e;
}

}  // namespace obstructa
