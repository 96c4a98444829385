#include "obstructa/fixtures.hpp"

#include "obstructa/error.hpp"
#include "obstructa/resolution.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef OBSTRUCTA_DEFAULT_FIXTURES
#define OBSTRUCTA_DEFAULT_FIXTURES "fixtures"
#endif

namespace obstructa::fixtures {

namespace {

using nlohmann::json;

std::string stem_text(long long s)
{
    return s < 0 ? std::to_string(s) : "+" + std::to_string(s);
}

ChartFixture chart_from(const json& j)
{
    ChartFixture c;
    c.id = j.at("id").get<std::string>();
    c.bottom = AffineExpr::parse(j.at("bottom").get<std::string>());
    c.origin = AffineExpr::parse(j.at("origin").get<std::string>());
    c.stem_lo = j.at("stem_window").at(0).get<long long>();
    c.stem_hi = j.at("stem_window").at(1).get<long long>();
    for (const auto& d : j.at("dots"))
        ++c.dots[{d.at(0).get<long long>(), d.at(1).get<std::size_t>()}];
    if (j.contains("towers"))
        c.towers = j.at("towers").get<std::vector<long long>>();
    if (j.contains("ko_panel"))
        c.ko_panel = j.at("ko_panel").get<std::string>();
    return c;
}

std::vector<ChartFixture> charts_from(const json& arr)
{
    std::vector<ChartFixture> out;
    for (const auto& j : arr)
        out.push_back(chart_from(j));
    return out;
}

Integer relative(const AffineExpr& e, const AffineExpr& origin, const dyadic::Natural& n)
{
    return Integer(e.eval(n)) - Integer(origin.eval(n));
}

}  // namespace

std::filesystem::path directory()
{
    if (const char* env = std::getenv("OBSTRUCTA_FIXTURES"); env && *env)
        return env;
    return OBSTRUCTA_DEFAULT_FIXTURES;
}

std::string read_text(const std::string& name)
{
    const auto path = directory() / name;
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open fixture " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json read_json(const std::string& name)
{
    try {
        return json::parse(read_text(name));
    } catch (const json::parse_error& e) {
        throw Error("fixture " + name + ": " + e.what());
    }
}

mpt::MptModel read_model(const std::string& name)
{
    try {
        return mpt::parse_relations(read_text(name));
    } catch (const ParseError& e) {
        throw ParseError(e.line(), name + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
}

std::string content_id(const nlohmann::json& entry)
{
    json copy = entry;
    if (copy.is_object())
        copy.erase("id");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : copy.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "ax-%016llx", static_cast<unsigned long long>(h));
    return buf;
}

AxiomRegistry AxiomRegistry::load()
{
    return from_json(read_json("axioms.json"));
}

AxiomRegistry AxiomRegistry::from_json(const nlohmann::json& j)
{
    AxiomRegistry r;
    r.version_ = j.at("version").get<int>();
    for (const auto& a : j.at("axioms")) {
        Axiom x{a.value("id", ""), a.at("name").get<std::string>(), a.at("kind").get<std::string>(),
                a.at("text").get<std::string>()};
        if (x.id != content_id(a))
            r.stale_.push_back(x.name);
        r.axioms_.push_back(std::move(x));
    }
    return r;
}

const Axiom& AxiomRegistry::get(const std::string& name) const
{
    for (const auto& a : axioms_)
        if (a.name == name)
            return a;
    throw Error("axiom registry has no entry '" + name + "'");
}

std::vector<ChartFixture> ko_panels(const nlohmann::json& charts)
{
    return charts_from(charts.at("ko_panels"));
}

std::vector<ChartFixture> homotopy_charts(const nlohmann::json& charts)
{
    return charts_from(charts.at("homotopy_charts"));
}

const ChartFixture& find_chart(const std::vector<ChartFixture>& charts, const std::string& id)
{
    for (const auto& c : charts)
        if (c.id == id)
            return c;
    throw Error("no chart fixture '" + id + "'");
}

std::vector<std::string> compare_ko_panel(const ChartFixture& panel, const dyadic::Natural& n)
{
    const Integer origin = Integer(panel.origin.eval(n));
    const auto m = dyadic::to_u64(panel.bottom.eval(n));
    const Integer hi = origin + panel.stem_hi;
    if (hi < Integer(m))
        return {"window lies below the bottom cell"};
    const auto chart = ext::stunted_chart(m, static_cast<ext::Degree>(hi));

    std::vector<std::string> diffs;
    for (long long s = panel.stem_lo; s <= panel.stem_hi; ++s) {
        const long long stem = static_cast<long long>(origin + s);
        const bool tower = std::find(panel.towers.begin(), panel.towers.end(), s) != panel.towers.end();
        if (tower != chart.has_tower(stem))
            diffs.push_back("stem " + stem_text(s) + (tower ? ": expected a tower" : ": unexpected tower"));
        std::size_t top = chart.s_max;
        if (tower) {
            top = 0;
            for (const auto& [key, mult] : panel.dots)
                if (key.first == s)
                    top = std::max(top, key.second);
        }
        for (std::size_t f = 0; f <= top; ++f) {
            const auto it = panel.dots.find({s, f});
            const std::size_t want = it == panel.dots.end() ? 0 : it->second;
            const std::size_t got = chart.multiplicity(stem, f);
            if (want != got)
                diffs.push_back("stem " + stem_text(s) + " filtration " + std::to_string(f) + ": expected " +
                                std::to_string(want) + " dots, computed " + std::to_string(got));
        }
    }
    return diffs;
}

std::vector<long long> kernel_stems(const ChartFixture& homotopy, const ChartFixture& ko, std::size_t max_filtration)
{
    std::vector<long long> out;
    for (const auto& [key, mult] : homotopy.dots) {
        if (key.second > max_filtration)
            continue;
        const auto it = ko.dots.find(key);
        const std::size_t image = it == ko.dots.end() ? 0 : it->second;
        for (std::size_t i = image; i < mult; ++i)
            out.push_back(key.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> compare_tower_with_chart(const mpt::MptModel& model, const ChartFixture& chart)
{
    std::vector<std::string> diffs;
    const dyadic::Natural probe = 1;
    const Integer shift = relative(model.base, chart.origin, probe);
    // The shift must not depend on n.
    if (shift != relative(model.base, chart.origin, 2))
        return {"chart origin and tower base differ by a multiple of n"};

    for (unsigned j = 0; j < model.stage_count(); ++j) {
        std::map<long long, std::size_t> want, got;
        for (const auto& l : model.labels(j))
            ++got[static_cast<long long>(shift) + l.offset - 1];
        for (const auto& [key, mult] : chart.dots)
            if (key.second == j)
                want[key.first] += mult;
        if (want != got) {
            std::string w, g;
            for (const auto& [s, k] : want)
                w += " " + stem_text(s) + (k > 1 ? "x" + std::to_string(k) : "");
            for (const auto& [s, k] : got)
                g += " " + stem_text(s) + (k > 1 ? "x" + std::to_string(k) : "");
            diffs.push_back("stage " + std::to_string(j) + ": chart stems" + w + ", tower stems" + g);
        }
    }
    return diffs;
}

std::vector<Check> verify_all(const dyadic::Natural& n_alpha2, const dyadic::Natural& n_alpha3)
{
    std::vector<Check> out;
    const auto guard = [&](const std::string& name, auto&& body) {
        try {
            std::string detail;
            const bool ok = body(detail);
            out.push_back({name, ok, detail});
        } catch (const std::exception& e) {
            out.push_back({name, false, e.what()});
        }
    };
    const auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v)
            s += (s.empty() ? "" : "; ") + x;
        return s;
    };

    guard("axioms.json content ids", [&](std::string& d) {
        const auto reg = AxiomRegistry::load();
        d = std::to_string(reg.all().size()) + " entries, version " + std::to_string(reg.version());
        if (!reg.stale_ids().empty())
            d = "stale: " + join(reg.stale_ids());
        return reg.stale_ids().empty();
    });

    const auto charts = read_json("charts.json");
    const auto ko = ko_panels(charts);
    const auto pi = homotopy_charts(charts);
    for (const auto& panel : ko) {
        const auto& n = panel.origin.coef == 8 ? n_alpha3 : n_alpha2;
        guard("chart " + panel.id + " at n=" + n.str(), [&](std::string& d) {
            const auto diffs = compare_ko_panel(panel, n);
            d = diffs.empty() ? "dot-for-dot" : join(diffs);
            return diffs.empty();
        });
    }

    for (const auto& row : charts.at("ko_orders").at("rows")) {
        const auto i = AffineExpr::parse(row.at("i").get<std::string>());
        const auto& cols = charts.at("ko_orders").at("columns");
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto m = AffineExpr::parse(cols[c].get<std::string>());
            const auto want = row.at("nu")[c].get<unsigned>();
            guard("ko order i=" + i.to_string() + " m=" + m.to_string(), [&](std::string& d) {
                const auto got = ext::ko_order(i.eval(n_alpha2), m.eval(n_alpha2));
                d = "computed " + got.str() + ", table " + std::to_string(want);
                return got == want;
            });
        }
    }
    for (const auto& e : charts.at("ko_orders").at("extra")) {
        const auto i = AffineExpr::parse(e.at("i").get<std::string>());
        const auto m = AffineExpr::parse(e.at("m").get<std::string>());
        const auto want = e.at("nu").get<unsigned>();
        guard("ko order i=" + i.to_string() + " m=" + m.to_string(), [&](std::string& d) {
            const auto got = ext::ko_order(i.eval(n_alpha3), m.eval(n_alpha3));
            d = "computed " + got.str() + ", table " + std::to_string(want);
            return got == want;
        });
    }

    for (const auto& h : pi) {
        if (h.ko_panel.empty())
            continue;
        guard("chart " + h.id + " covers " + h.ko_panel, [&](std::string& d) {
            const auto& k = find_chart(ko, h.ko_panel);
            for (const auto& [key, mult] : k.dots) {
                if (key.first > h.stem_hi)
                    continue;
                const auto it = h.dots.find(key);
                if (it == h.dots.end() || it->second < mult) {
                    d = "ko dot at stem " + stem_text(key.first) + " has no preimage";
                    return false;
                }
            }
            return true;
        });
    }

    for (const auto& [file, counts] :
         std::vector<std::pair<std::string, std::vector<std::size_t>>>{{"nonimmersion.mpt", {3, 7, 6, 2, 1}},
                                                                        {"embedding.mpt", {1, 3, 3, 1}}}) {
        guard(file + " parses and round-trips", [&](std::string& d) {
            const auto model = read_model(file);
            std::vector<std::size_t> got;
            for (unsigned j = 0; j < model.stage_count(); ++j)
                got.push_back(model.labels(j).size());
            for (auto c : got)
                d += (d.empty() ? "classes per stage:" : "") + std::string(" ") + std::to_string(c);
            return got == counts && mpt::parse_relations(mpt::print_relations(model)) == model;
        });
    }

    for (const auto& t : charts.at("towers_vs_charts")) {
        const auto file = t.at("relations").get<std::string>();
        const auto id = t.at("chart").get<std::string>();
        guard(file + " matches " + id, [&](std::string& d) {
            const auto diffs = compare_tower_with_chart(read_model(file), find_chart(pi, id));
            d = diffs.empty() ? "every stage matches its filtration" : join(diffs);
            return diffs.empty();
        });
    }
    return out;
}

}  // namespace obstructa::fixtures
