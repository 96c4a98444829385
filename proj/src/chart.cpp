#include "obstructa/resolution.hpp"

#include "obstructa/error.hpp"

#include <algorithm>

namespace obstructa::ext {

std::size_t ExtChart::multiplicity(long long stem, std::size_t s) const
{
    auto it = dots.find({stem, s});
    return it == dots.end() ? 0 : it->second;
}

std::size_t ExtChart::dots_in_stem(long long stem) const
{
    std::size_t n = 0;
    for (const auto& [key, mult] : dots)
        if (key.first == stem)
            n += mult;
    return n;
}

bool ExtChart::has_tower(long long stem) const
{
    return std::find(towers.begin(), towers.end(), stem) != towers.end();
}

ExtChart ext_chart(const Resolution& r)
{
    const auto& a1 = A1Algebra::get();
    ExtChart chart;
    chart.s_max = r.s_max();
    chart.stem_min = r.module().dimension() ? static_cast<long long>(r.module().bottom()) : 0;
    chart.stem_max = static_cast<long long>(r.t_max()) - static_cast<long long>(r.s_max());

    // dot identity of every generator, per filtration
    std::vector<std::vector<ChartDot>> dot_of(r.stages().size());
    for (std::size_t s = 0; s < r.stages().size(); ++s) {
        const auto& f = r.stages()[s].module;
        for (std::size_t g = 0; g < f.generator_count(); ++g) {
            const long long stem = static_cast<long long>(f.generator_degree(g)) - static_cast<long long>(s);
            auto& mult = chart.dots[{stem, s}];
            dot_of[s].push_back({stem, s, mult});
            ++mult;
        }
    }

    for (std::size_t s = 1; s < r.stages().size(); ++s) {
        const auto& stage = r.stages()[s];
        const auto& below = r.stages()[s - 1].module;
        for (std::size_t g = 0; g < stage.module.generator_count(); ++g) {
            const auto basis = below.basis(stage.module.generator_degree(g));
            for (auto i : stage.boundary[g].ones()) {
                const auto [h, b] = basis[i];
                if (b == a1.sq1())
                    chart.h0.push_back({dot_of[s - 1][h], dot_of[s][g]});
                else if (b == a1.sq2())
                    chart.h1.push_back({dot_of[s - 1][h], dot_of[s][g]});
            }
        }
    }
    std::sort(chart.h0.begin(), chart.h0.end());
    std::sort(chart.h1.begin(), chart.h1.end());

    if (chart.s_max > 0)
        for (const auto& line : chart.h0)
            if (line.to.filtration == chart.s_max && line.to.stem <= chart.stem_max &&
                !chart.has_tower(line.to.stem))
                chart.towers.push_back(line.to.stem);
    std::sort(chart.towers.begin(), chart.towers.end());
    return chart;
}

nlohmann::json chart_to_json(const ExtChart& c)
{
    nlohmann::json j;
    j["dots"] = nlohmann::json::array();
    for (const auto& [key, mult] : c.dots)
        j["dots"].push_back({key.first, key.second, mult});
    for (const auto* which : {&c.h0, &c.h1}) {
        auto& arr = j[which == &c.h0 ? "h0" : "h1"];
        arr = nlohmann::json::array();
        for (const auto& line : *which)
            arr.push_back({line.from.stem, line.from.filtration, line.from.index, line.to.index});
    }
    j["towers"] = c.towers;
    j["s_max"] = c.s_max;
    j["stem_range"] = {c.stem_min, c.stem_max};
    return j;
}

ExtChart chart_from_json(const nlohmann::json& j)
{
    ExtChart c;
    for (const auto& d : j.at("dots"))
        c.dots[{d.at(0).get<long long>(), d.at(1).get<std::size_t>()}] = d.at(2).get<std::size_t>();
    for (const auto& line : j.at("h0")) {
        const auto stem = line.at(0).get<long long>();
        const auto s = line.at(1).get<std::size_t>();
        c.h0.push_back({{stem, s, line.at(2).get<std::size_t>()}, {stem, s + 1, line.at(3).get<std::size_t>()}});
    }
    for (const auto& line : j.at("h1")) {
        const auto stem = line.at(0).get<long long>();
        const auto s = line.at(1).get<std::size_t>();
        c.h1.push_back(
            {{stem, s, line.at(2).get<std::size_t>()}, {stem + 1, s + 1, line.at(3).get<std::size_t>()}});
    }
    c.towers = j.at("towers").get<std::vector<long long>>();
    c.s_max = j.at("s_max").get<std::size_t>();
    c.stem_min = j.at("stem_range").at(0).get<long long>();
    c.stem_max = j.at("stem_range").at(1).get<long long>();
    return c;
}

KoWindow ko_window(Degree stem, Degree m, Degree extra_top)
{
    if (stem < m)
        throw DomainError("stem " + std::to_string(stem) + " lies below the bottom cell of P_" +
                          std::to_string(m));
    const std::size_t s_max = std::max<std::size_t>(8, stem - m + 2);
    return {s_max, stem + 6 * s_max + 8 + extra_top, stem + s_max};
}

KoOrder ko_order_detail(const dyadic::Natural& i, const dyadic::Natural& m, Degree extra_top)
{
    dyadic::require_natural(i, "i");
    if (i == 0)
        throw DomainError("ko_order needs i >= 1");
    const Degree stem = dyadic::to_u64(4 * i - 1);
    const Degree bottom = dyadic::to_u64(m);
    if (stem < bottom)
        return {0, {0, bottom, bottom}};  // P_m is (m-1)-connected
    const auto window = ko_window(stem, bottom, extra_top);
    const auto chart = ext_chart(minimal_resolution(stunted_module(bottom, window.top), window.s_max, window.t_max));
    const auto d = static_cast<long long>(stem);
    if (chart.has_tower(d))
        throw DomainError("ko_" + std::to_string(stem) + "(P_" + std::to_string(bottom) +
                          ") contains an integer summand; its order is infinite");
    if (chart.multiplicity(d, window.s_max) != 0)
        throw WindowError("stem " + std::to_string(stem) + " of P_" + std::to_string(bottom) +
                          " still has classes at the filtration ceiling " + std::to_string(window.s_max));
    return {static_cast<unsigned>(chart.dots_in_stem(d)), window};
}

dyadic::Natural ko_order(const dyadic::Natural& i, const dyadic::Natural& m)
{
    return ko_order_detail(i, m).nu;
}

ExtChart stunted_chart(Degree m, Degree stem_hi)
{
    const auto window = ko_window(stem_hi, m);
    return ext_chart(minimal_resolution(stunted_module(m, window.top), window.s_max, window.t_max));
}

}  // namespace obstructa::ext
