#include "obstructa/resolution.hpp"

#include "obstructa/error.hpp"

#include <algorithm>

namespace obstructa::ext {

std::size_t FreeModule::add_generator(Degree d)
{
    if (!degrees_.empty() && d < degrees_.back())
        throw std::logic_error("free module generators must be added in nondecreasing degree");
    degrees_.push_back(d);
    return degrees_.size() - 1;
}

std::pair<std::size_t, std::size_t> FreeModule::window(Degree t) const
{
    const Degree lo_deg = t >= A1Algebra::top_degree ? t - A1Algebra::top_degree : 0;
    auto lo = std::lower_bound(degrees_.begin(), degrees_.end(), lo_deg);
    auto hi = std::upper_bound(lo, degrees_.end(), t);
    return {static_cast<std::size_t>(lo - degrees_.begin()), static_cast<std::size_t>(hi - degrees_.begin())};
}

std::vector<FreeModule::Entry> FreeModule::basis(Degree t) const
{
    const auto& a1 = A1Algebra::get();
    std::vector<Entry> out;
    auto [lo, hi] = window(t);
    for (std::size_t g = lo; g < hi; ++g)
        for (auto b : a1.in_degree(static_cast<unsigned>(t - degrees_[g])))
            out.push_back({g, b});
    return out;
}

std::size_t FreeModule::dimension(Degree t) const
{
    const auto& a1 = A1Algebra::get();
    std::size_t n = 0;
    auto [lo, hi] = window(t);
    for (std::size_t g = lo; g < hi; ++g)
        n += a1.in_degree(static_cast<unsigned>(t - degrees_[g])).size();
    return n;
}

std::size_t FreeModule::index(std::size_t g, std::size_t b) const
{
    const auto& a1 = A1Algebra::get();
    const Degree t = degrees_[g] + a1.degree(b);
    std::size_t pos = 0;
    auto [lo, hi] = window(t);
    for (std::size_t h = lo; h < g; ++h)
        pos += a1.in_degree(static_cast<unsigned>(t - degrees_[h])).size();
    const auto& same = a1.in_degree(a1.degree(b));
    return pos + static_cast<std::size_t>(std::find(same.begin(), same.end(), b) - same.begin());
}

f2::BitVector FreeModule::act(std::size_t a, Degree t, const f2::BitVector& v) const
{
    const auto& a1 = A1Algebra::get();
    const Degree target = t + a1.degree(a);
    const auto source_basis = basis(t);

    // Offsets of each generator's block in the target degree.
    auto [lo, hi] = window(target);
    std::vector<std::size_t> offset(hi - lo + 1, 0);
    for (std::size_t g = lo; g < hi; ++g)
        offset[g - lo + 1] = offset[g - lo] + a1.in_degree(static_cast<unsigned>(target - degrees_[g])).size();

    f2::BitVector out(offset.back());
    for (auto i : v.ones()) {
        const auto [g, c] = source_basis[i];
        const std::uint8_t mask = a1.product(a, c);
        if (!mask)
            continue;
        const auto& slot = a1.in_degree(static_cast<unsigned>(target - degrees_[g]));
        for (std::size_t k = 0; k < slot.size(); ++k)
            if (mask >> slot[k] & 1U)
                out.flip(offset[g - lo] + k);
    }
    return out;
}

Resolution::Resolution(A1Module module, std::size_t s_max, Degree t_max)
    : module_(std::move(module)), s_max_(s_max), t_max_(t_max), stages_(s_max + 1)
{
}

std::size_t Resolution::ext_dimension(std::size_t s, Degree t) const
{
    if (s >= stages_.size())
        return 0;
    const auto& f = stages_[s].module;
    std::size_t n = 0;
    for (std::size_t g = 0; g < f.generator_count(); ++g)
        n += f.generator_degree(g) == t ? 1 : 0;
    return n;
}

std::size_t Resolution::target_dimension(std::size_t s, Degree t) const
{
    return s == 0 ? module_.dimension(t) : stages_[s - 1].module.dimension(t);
}

f2::BitVector Resolution::apply_boundary(std::size_t s, std::size_t g, std::size_t b) const
{
    const auto& stage = stages_[s];
    const Degree d = stage.module.generator_degree(g);
    if (s == 0)
        return module_.act_local(b, d, stage.boundary[g]);
    return stages_[s - 1].module.act(b, d, stage.boundary[g]);
}

std::vector<f2::BitVector> Resolution::boundary_matrix(std::size_t s, Degree t) const
{
    std::vector<f2::BitVector> rows;
    for (const auto& [g, b] : stages_[s].module.basis(t))
        rows.push_back(apply_boundary(s, g, b));
    return rows;
}

Resolution minimal_resolution(const A1Module& M, std::size_t s_max, Degree t_max)
{
    if (M.dimension() == 0)
        return Resolution(M, s_max, t_max);
    if (t_max < M.bottom())
        throw WindowError("resolution ceiling t_max = " + std::to_string(t_max) +
                          " lies below the bottom of the module (" + std::to_string(M.bottom()) + ")");

    Resolution r(M, s_max, t_max);
    for (Degree t = M.bottom(); t <= t_max; ++t) {
        // Full matrix of d_{s-1} in degree t, including generators added at t.
        std::vector<f2::BitVector> previous;
        std::size_t previous_columns = 0;
        for (std::size_t s = 0; s <= s_max; ++s) {
            auto& stage = r.stages_[s];
            const std::size_t columns = r.target_dimension(s, t);
            auto rows = r.boundary_matrix(s, t);
            if (columns == 0) {
                previous = std::move(rows);
                previous_columns = 0;
                continue;
            }

            f2::Echelon image(columns);
            for (const auto& row : rows)
                image.insert(row);

            std::vector<f2::BitVector> cycles;
            if (s == 0) {
                for (std::size_t i = 0; i < columns; ++i) {
                    f2::BitVector e(columns);
                    e.set(i);
                    cycles.push_back(std::move(e));
                }
            } else {
                cycles = f2::left_kernel(previous, previous_columns);
            }

            for (auto& z : cycles) {
                if (!image.insert(z))
                    continue;
                stage.module.add_generator(t);
                rows.push_back(z);
                stage.boundary.push_back(std::move(z));
            }
            previous = std::move(rows);
            previous_columns = columns;
        }
    }
    return r;
}

}  // namespace obstructa::ext
