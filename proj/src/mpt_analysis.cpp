#include "obstructa/mpt.hpp"

#include "obstructa/error.hpp"

#include <algorithm>
#include <bit>

namespace obstructa::mpt {

namespace {

Degree checked_degree(const Natural& value, const char* what)
{
    try {
        return dyadic::to_u64(value);
    } catch (const DomainError&) {
        throw DomainError(std::string(what) + " " + value.str() + " does not fit in 64 bits");
    }
}

}  // namespace

Degree Instance::degree(const Label& l) const
{
    const Integer d = Integer(base) + l.offset;
    if (d < 1)
        throw DomainError("class " + l.to_string() + " has nonpositive degree " + d.str());
    if (d > Integer(space_dim) + 3)
        throw DomainError("degree overflow: " + l.to_string() + " has degree " + d.str() + " > " +
                          std::to_string(space_dim) + " + 3");
    return static_cast<Degree>(d);
}

CohomologyClass Instance::coefficient(Coefficient c) const
{
    switch (c) {
    case Coefficient::one: return CohomologyClass::one(space_dim);
    case Coefficient::w4: return cohomology::sw_class(bundle, 4);
    case Coefficient::w8: return cohomology::sw_class(bundle, 8);
    case Coefficient::w4w4: {
        const auto w4 = cohomology::sw_class(bundle, 4);
        return cohomology::multiply(w4, w4);
    }
    }
    return CohomologyClass(space_dim);
}

std::vector<Label> MptModel::labels(unsigned stage) const
{
    if (stage >= stages.size())
        throw DomainError("model has no stage " + std::to_string(stage));
    if (stage == 0)
        return stages[0].classes;
    std::vector<Label> out;
    for (const auto& k : stages[stage].k_invariants)
        out.push_back(k.label);
    return out;
}

bool MptModel::has(const Label& l) const
{
    if (l.stage >= stages.size())
        return false;
    const auto all = labels(l.stage);
    return std::find(all.begin(), all.end(), l) != all.end();
}

const KInvariant& MptModel::find(const Label& l) const
{
    if (l.stage == 0 || l.stage >= stages.size())
        throw DomainError("unknown k-invariant " + l.to_string());
    for (const auto& k : stages[l.stage].k_invariants)
        if (k.label == l)
            return k;
    throw DomainError("unknown k-invariant " + l.to_string());
}

Instance MptModel::instantiate(const Natural& n) const
{
    Instance inst;
    inst.n = n;
    inst.base = checked_degree(base.eval(n), "base");
    inst.space_dim = checked_degree(space.eval(n), "space dimension");
    inst.bundle = {bundle.eval(n), inst.space_dim};
    for (unsigned j = 0; j < stages.size(); ++j)
        for (const auto& l : labels(j))
            inst.degree(l);
    return inst;
}

CohomologyClass evaluate_relation(const KInvariant& k, const Label& source, const CohomologyClass& input,
                                  const Instance& inst)
{
    CohomologyClass out(inst.space_dim);
    for (const auto& t : k.relation)
        if (t.source == source)
            out += cohomology::multiply(inst.coefficient(t.coef), cohomology::sq_word(t.word, input));
    return out;
}

std::vector<Delta> variation_delta(const MptModel& model, unsigned stage, const Label& fiber, const Instance& inst)
{
    if (stage == 0 || stage >= model.stage_count())
        throw DomainError("no stage " + std::to_string(stage) + " to vary");
    if (fiber.stage != stage - 1 || !model.has(fiber))
        throw DomainError("unknown label " + fiber.to_string() + " for a stage-" + std::to_string(stage) + " fiber");
    const auto x = CohomologyClass::monomial(inst.space_dim, inst.degree(fiber) - 1);
    std::vector<Delta> out;
    for (const auto& k : model.stages[stage].k_invariants) {
        inst.degree(k.label);
        out.push_back({k.label, evaluate_relation(k, fiber, x, inst)});
    }
    return out;
}

std::vector<Delta> variation_delta(const MptModel& model, unsigned stage, const Label& fiber, const Natural& n)
{
    return variation_delta(model, stage, fiber, model.instantiate(n));
}

std::optional<std::size_t> VariationMatrix::column_index(const Label& l) const
{
    const auto it = std::find(columns.begin(), columns.end(), l);
    if (it == columns.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<Label> VariationMatrix::flips(std::size_t row) const
{
    std::vector<Label> out;
    for (auto c : entries.at(row).ones())
        out.push_back(columns[c]);
    return out;
}

VariationMatrix variation_matrix(const MptModel& model, unsigned stage, const Natural& n)
{
    const Instance inst = model.instantiate(n);
    VariationMatrix m;
    m.stage = stage;
    m.columns = model.labels(stage);
    for (const auto& fiber : model.labels(stage - 1)) {
        f2::BitVector row(m.columns.size());
        const auto deltas = variation_delta(model, stage, fiber, inst);
        for (std::size_t c = 0; c < deltas.size(); ++c)
            if (deltas[c].change.is_monomial(inst.degree(deltas[c].k_invariant)))
                row.set(c);
        m.rows.push_back(fiber);
        m.row_dims.push_back(inst.degree(fiber) - 1);
        m.entries.push_back(std::move(row));
    }
    return m;
}

VariationMatrix make_matrix(std::vector<Label> rows, std::vector<Label> columns,
                            const std::vector<std::vector<Label>>& flips)
{
    if (flips.size() != rows.size())
        throw DomainError("one flip list per row is required");
    VariationMatrix m;
    m.rows = std::move(rows);
    m.columns = std::move(columns);
    m.row_dims.assign(m.rows.size(), 0);
    for (const auto& list : flips) {
        f2::BitVector row(m.columns.size());
        for (const auto& l : list) {
            const auto c = m.column_index(l);
            if (!c)
                throw DomainError("unknown column " + l.to_string());
            row.set(*c);
        }
        m.entries.push_back(std::move(row));
    }
    return m;
}

bool check_implication(const VariationMatrix& m, const std::set<Label>& antecedent,
                       const std::set<Label>& consequent)
{
    if (antecedent.empty())
        throw DomainError("empty antecedent");
    const auto mask = [&](const std::set<Label>& labels) {
        f2::BitVector v(m.columns.size());
        for (const auto& l : labels) {
            const auto c = m.column_index(l);
            if (!c)
                throw DomainError("unknown label " + l.to_string());
            v.set(*c);
        }
        return v;
    };
    const auto need = mask(antecedent);
    const auto hit = mask(consequent);
    if (m.rows.size() > 24)
        throw DomainError("too many rows to enumerate");

    const auto contains = [](const f2::BitVector& v, const f2::BitVector& sub) {
        const auto a = v.words();
        const auto b = sub.words();
        for (std::size_t i = 0; i < a.size(); ++i)
            if ((a[i] & b[i]) != b[i])
                return false;
        return true;
    };
    const auto meets = [](const f2::BitVector& v, const f2::BitVector& other) {
        const auto a = v.words();
        const auto b = other.words();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] & b[i])
                return true;
        return false;
    };

    // Gray-code walk over all 2^rows combinations.
    f2::BitVector v(m.columns.size());
    const std::uint64_t total = std::uint64_t{1} << m.rows.size();
    for (std::uint64_t i = 1; i < total; ++i) {
        v ^= m.entries[static_cast<std::size_t>(std::countr_zero(i))];
        if (contains(v, need) && !meets(v, hit))
            return false;
    }
    return true;
}

bool kernel_trivial(const VariationMatrix& m)
{
    return f2::rank(m.entries, m.columns.size()) == m.rows.size();
}

bool forced_vanishing(const MptModel& model, unsigned stage, const Label& relation_label, const Label& candidate,
                      const Natural& n)
{
    if (relation_label.stage != stage + 1)
        throw DomainError(relation_label.to_string() + " is not a stage-" + std::to_string(stage + 1) + " relation");
    const KInvariant& k = model.find(relation_label);
    if (std::none_of(k.relation.begin(), k.relation.end(), [&](const Term& t) { return t.source == candidate; }))
        throw DomainError("relation " + relation_label.to_string() + " does not reference " + candidate.to_string());
    const Instance inst = model.instantiate(n);
    const auto value = CohomologyClass::monomial(inst.space_dim, inst.degree(candidate));
    return !evaluate_relation(k, candidate, value, inst).is_zero();
}

std::set<Natural> quaternionic_pullback_check(const std::set<Natural>& fiber_degrees, const Natural& hp_dim,
                                              const Natural& shift)
{
    std::set<Natural> out;
    for (const auto& d : fiber_degrees) {
        dyadic::require_natural(d, "fiber degree");
        const Natural e = d + shift + 1;
        if (e % 4 == 0 && e <= 4 * hp_dim)
            out.insert(e);
    }
    return out;
}

CohomologyClass delta_through_level1_fiber(const MptModel& model, const Label& relation_label, Degree fiber_dim,
                                           const Natural& n, const std::optional<Natural>& bundle_multiple)
{
    if (relation_label.stage != 1)
        throw DomainError(relation_label.to_string() + " is not a stage-1 relation");
    const KInvariant& k = model.find(relation_label);
    Instance inst = model.instantiate(n);
    if (bundle_multiple)
        inst.bundle.multiple = *bundle_multiple;
    for (const auto& w : model.labels(0))
        if (inst.degree(w) == fiber_dim + 1)
            return evaluate_relation(k, w, CohomologyClass::monomial(inst.space_dim, fiber_dim), inst);
    throw DomainError("no stage-0 class of degree " + std::to_string(fiber_dim + 1));
}

nlohmann::json to_json(const VariationMatrix& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        nlohmann::json flips = nlohmann::json::array();
        for (const auto& l : m.flips(r))
            flips.push_back(l.to_string());
        rows.push_back({{"fiber", m.rows[r].to_string()}, {"fiber_dim", m.row_dims[r]}, {"flips", flips}});
    }
    nlohmann::json columns = nlohmann::json::array();
    for (const auto& l : m.columns)
        columns.push_back(l.to_string());
    return {{"stage", m.stage}, {"columns", columns}, {"rows", rows}, {"kernel_trivial", kernel_trivial(m)}};
}

nlohmann::json to_json(const std::vector<Delta>& deltas)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : deltas)
        out.push_back({{"k_invariant", d.k_invariant.to_string()}, {"change", d.change.to_string()}});
    return out;
}

}  // namespace obstructa::mpt
