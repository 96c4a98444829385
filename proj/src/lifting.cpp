#include "obstructa/lifting.hpp"

#include "obstructa/error.hpp"
#include "obstructa/json_natural.hpp"
#include "obstructa/resolution.hpp"

namespace obstructa::lifting {

Natural KoOrderTable::get(const Natural& i, const Natural& m)
{
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find({i, m}); it != memo_.end())
            return it->second;
    }
    Natural value = ext::ko_order(i, m);
    std::lock_guard lock(mutex_);
    return memo_.emplace(std::pair{i, m}, value).first->second;
}

std::size_t KoOrderTable::size() const
{
    std::lock_guard lock(mutex_);
    return memo_.size();
}

std::vector<std::pair<Natural, Natural>> KoOrderTable::keys() const
{
    std::lock_guard lock(mutex_);
    std::vector<std::pair<Natural, Natural>> out;
    for (const auto& [key, value] : memo_)
        out.push_back(key);
    return out;
}

KoOrderTable& KoOrderTable::shared()
{
    static KoOrderTable table;
    return table;
}

LiftVerdict bo_lift_decision(const LiftQuery& q, KoOrderTable& table)
{
    dyadic::require_natural(q.p, "p");
    dyadic::require_natural(q.k, "k");
    dyadic::require_natural(q.m, "m");
    if (q.k == 0)
        throw DomainError("bo_lift_decision needs k >= 1");

    LiftVerdict v;
    v.dimension_ok = q.m >= 2 * q.k;
    for (Natural i = 1; i <= q.k; ++i) {
        if (i > q.p)
            continue;  // C(p, i) = 0, infinitely divisible
        const Natural binom_nu = dyadic::nu_binom(q.p, i);
        const Natural ko_nu = table.get(i, q.m);
        if (binom_nu < ko_nu)
            v.failures.push_back({i, binom_nu, ko_nu});
    }
    v.lifts = v.dimension_ok && v.failures.empty();
    return v;
}

nlohmann::json to_json(const LiftQuery& q, const LiftVerdict& v)
{
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : v.failures)
        failures.push_back(
            {{"i", natural_json(f.i)}, {"nu_binom", natural_json(f.nu_binom)}, {"ko_nu", natural_json(f.ko_nu)}});
    return {{"query", {{"p", natural_json(q.p)}, {"k", natural_json(q.k)}, {"m", natural_json(q.m)}}},
            {"lifts", v.lifts},
            {"dimension_ok", v.dimension_ok},
            {"failures", failures}};
}

}  // namespace obstructa::lifting
