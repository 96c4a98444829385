#pragma once

// Lifting criterion for p times the quaternionic Hopf bundle over HP^k into the
// bo-fibration B^o(m) -> BSp: it lifts iff m >= 2k and, for every i <= k,
// nu(C(p, i)) >= nu(|ko_{4i-1}(P_m)|).

#include "obstructa/dyadic.hpp"

#include "json.hpp"

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace obstructa::lifting {

using dyadic::Natural;

struct LiftQuery {
    Natural p;  // multiple of the Hopf bundle
    Natural k;  // quaternionic dimension
    Natural m;  // geometric-dimension bound
};

struct LiftFailure {
    Natural i;
    Natural nu_binom;
    Natural ko_nu;
    bool operator==(const LiftFailure&) const = default;
};

struct LiftVerdict {
    bool lifts = false;
    bool dimension_ok = false;
    std::vector<LiftFailure> failures;
    bool operator==(const LiftVerdict&) const = default;
};

// Memo of nu(|ko_{4i-1}(P_m)|) keyed by (i, m). Safe for concurrent use; a
// racing insert keeps whichever value landed first (they are equal).
class KoOrderTable {
public:
    Natural get(const Natural& i, const Natural& m);
    std::size_t size() const;
    // The (i, m) pairs computed so far, in order.
    std::vector<std::pair<Natural, Natural>> keys() const;
    static KoOrderTable& shared();

private:
    mutable std::mutex mutex_;
    std::map<std::pair<Natural, Natural>, Natural> memo_;
};

// Checks every i in 1..k, so the failure list is complete. Throws DomainError
// for k = 0; propagates window errors from the Ext computation.
LiftVerdict bo_lift_decision(const LiftQuery& q, KoOrderTable& table = KoOrderTable::shared());

nlohmann::json to_json(const LiftQuery& q, const LiftVerdict& v);

}  // namespace obstructa::lifting
