#include "obstructa/cohomology.hpp"

#include "obstructa/error.hpp"

#include <algorithm>

namespace obstructa::cohomology {

CohomologyClass::CohomologyClass(Degree truncation, std::initializer_list<Degree> degrees)
    : truncation_(truncation)
{
    for (auto d : degrees)
        toggle(d);
}

CohomologyClass CohomologyClass::monomial(Degree truncation, Degree d)
{
    CohomologyClass c(truncation);
    c.toggle(d);
    return c;
}

bool CohomologyClass::contains(Degree d) const
{
    return std::binary_search(degrees_.begin(), degrees_.end(), d);
}

void CohomologyClass::toggle(Degree d)
{
    if (d > truncation_)
        return;
    auto it = std::lower_bound(degrees_.begin(), degrees_.end(), d);
    if (it != degrees_.end() && *it == d)
        degrees_.erase(it);
    else
        degrees_.insert(it, d);
}

CohomologyClass& CohomologyClass::operator+=(const CohomologyClass& other)
{
    if (other.truncation_ != truncation_)
        throw DomainError("adding classes of P^" + std::to_string(truncation_) + " and P^" +
                          std::to_string(other.truncation_));
    std::vector<Degree> out;
    std::set_symmetric_difference(degrees_.begin(), degrees_.end(), other.degrees_.begin(),
                                  other.degrees_.end(), std::back_inserter(out));
    degrees_ = std::move(out);
    return *this;
}

std::string CohomologyClass::to_string() const
{
    if (degrees_.empty())
        return "0";
    std::string out;
    for (auto d : degrees_) {
        if (!out.empty())
            out += " + ";
        out += d == 0 ? std::string("1") : "x^" + std::to_string(d);
    }
    return out;
}

SteenrodWord::SteenrodWord(std::vector<Degree> factors) : factors_(std::move(factors))
{
    for (auto k : factors_)
        if (k == 0)
            throw DomainError("Steenrod word factors must be at least 1 (Sq0 is the identity)");
}

Degree SteenrodWord::degree() const noexcept
{
    Degree d = 0;
    for (auto k : factors_)
        d += k;
    return d;
}

SteenrodWord SteenrodWord::then_after(const SteenrodWord& right) const
{
    auto f = factors_;
    f.insert(f.end(), right.factors_.begin(), right.factors_.end());
    return SteenrodWord(std::move(f));
}

std::string SteenrodWord::to_string() const
{
    if (factors_.empty())
        return "1";
    std::string out;
    for (auto k : factors_) {
        if (!out.empty())
            out += ' ';
        out += "Sq" + std::to_string(k);
    }
    return out;
}

CohomologyClass sq(Degree k, const CohomologyClass& c)
{
    CohomologyClass out(c.truncation());
    for (auto j : c.degrees())
        if (dyadic::binom_mod2(j, k))
            out.toggle(j + k);
    return out;
}

CohomologyClass sq_word(const SteenrodWord& w, const CohomologyClass& c)
{
    CohomologyClass out = c;
    const auto& f = w.factors();
    for (auto it = f.rbegin(); it != f.rend() && !out.is_zero(); ++it)
        out = sq(*it, out);
    return out;
}

CohomologyClass multiply(const CohomologyClass& a, const CohomologyClass& b)
{
    if (a.truncation() != b.truncation())
        throw DomainError("multiplying classes of P^" + std::to_string(a.truncation()) + " and P^" +
                          std::to_string(b.truncation()));
    CohomologyClass out(a.truncation());
    for (auto i : a.degrees())
        for (auto j : b.degrees())
            out.toggle(i + j);
    return out;
}

CohomologyClass sw_class(const BundleData& b, Degree i)
{
    dyadic::require_natural(b.multiple, "bundle multiple");
    if (i > b.base_dim || !dyadic::binom_mod2(b.multiple, dyadic::Natural(i)))
        return CohomologyClass(b.base_dim);
    return CohomologyClass::monomial(b.base_dim, i);
}

CohomologyClass total_sw_class(const BundleData& b)
{
    CohomologyClass out(b.base_dim);
    for (Degree i = 0; i <= b.base_dim; ++i)
        out += sw_class(b, i);
    return out;
}

}  // namespace obstructa::cohomology
