#include "obstructa/render.hpp"

#include "obstructa/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace obstructa::render {

namespace {

using nlohmann::json;

struct Line {
    long long stem;
    std::size_t s;
    std::size_t from;
    std::size_t to;
};

struct Parsed {
    std::map<std::pair<long long, std::size_t>, std::size_t> dots;
    std::vector<Line> h0, h1;
    std::set<long long> towers;
    std::size_t s_max = 0;
    Window window;
    std::size_t top = 0;  // highest filtration drawn
};

Parsed parse(const json& chart, const std::optional<Window>& window)
{
    Parsed p;
    try {
        for (const auto& d : chart.at("dots"))
            p.dots[{d.at(0).get<long long>(), d.at(1).get<std::size_t>()}] = d.at(2).get<std::size_t>();
        for (const auto* key : {"h0", "h1"})
            for (const auto& l : chart.at(key))
                (key[1] == '0' ? p.h0 : p.h1)
                    .push_back({l.at(0).get<long long>(), l.at(1).get<std::size_t>(), l.at(2).get<std::size_t>(),
                                l.at(3).get<std::size_t>()});
        for (const auto& t : chart.at("towers"))
            p.towers.insert(t.get<long long>());
        p.s_max = chart.at("s_max").get<std::size_t>();
        p.window = window.value_or(
            Window{chart.at("stem_range").at(0).get<long long>(), chart.at("stem_range").at(1).get<long long>()});
    } catch (const json::exception& e) {
        throw Error(std::string("malformed chart JSON: ") + e.what());
    }
    if (p.window.stem_hi < p.window.stem_lo)
        throw DomainError("empty stem window");
    for (const auto& [key, mult] : p.dots)
        if (key.first >= p.window.stem_lo && key.first <= p.window.stem_hi)
            p.top = std::max(p.top, key.second);
    return p;
}

bool inside(const Parsed& p, long long stem)
{
    return stem >= p.window.stem_lo && stem <= p.window.stem_hi;
}

std::string rtrim(std::string s)
{
    s.erase(s.find_last_not_of(' ') + 1);
    return s;
}

}  // namespace

std::string chart_text(const json& chart, const std::optional<Window>& window)
{
    const Parsed p = parse(chart, window);
    constexpr std::size_t margin = 4;
    constexpr std::size_t cell = 4;
    const auto width = margin + cell * static_cast<std::size_t>(p.window.stem_hi - p.window.stem_lo) + 1;
    const auto col = [&](long long stem) { return margin + cell * static_cast<std::size_t>(stem - p.window.stem_lo); };

    // Row 0 is the tower row, then filtration top, connector, top-1, ..., 0.
    const std::size_t rows = 2 * p.top + 2;
    std::vector<std::string> grid(rows, std::string(width, ' '));
    const auto dot_row = [&](std::size_t s) { return 1 + 2 * (p.top - s); };

    for (std::size_t s = 0; s <= p.top; ++s) {
        std::string label = std::to_string(s);
        label.resize(margin - 1, ' ');
        grid[dot_row(s)].replace(0, label.size(), label);
    }
    for (const auto& [key, mult] : p.dots) {
        if (!inside(p, key.first) || key.second > p.top)
            continue;
        grid[dot_row(key.second)][col(key.first)] = mult == 1 ? 'o' : mult < 10 ? static_cast<char>('0' + mult) : '*';
    }
    for (const auto& l : p.h0)
        if (inside(p, l.stem) && l.s < p.top)
            grid[dot_row(l.s) - 1][col(l.stem)] = '|';
    for (const auto& l : p.h1)
        if (inside(p, l.stem) && inside(p, l.stem + 1) && l.s < p.top)
            grid[dot_row(l.s) - 1][col(l.stem) + cell / 2] = '/';
    for (auto t : p.towers)
        if (inside(p, t))
            grid[0][col(t)] = '^';

    std::ostringstream out;
    for (const auto& row : grid) {
        const auto line = rtrim(row);
        if (&row == &grid.front() && line.empty())
            continue;
        out << line << '\n';
    }
    std::string axis(width, ' ');
    std::string numbers(width + 8, ' ');
    std::size_t free_from = 0;
    for (long long d = p.window.stem_lo; d <= p.window.stem_hi; ++d) {
        axis[col(d)] = '+';
        const auto text = std::to_string(d);
        const auto at = col(d);
        if (at >= free_from) {
            numbers.replace(at, text.size(), text);
            free_from = at + text.size() + 1;
        }
    }
    for (std::size_t i = margin; i < col(p.window.stem_lo); ++i)
        axis[i] = '-';
    for (std::size_t i = col(p.window.stem_lo); i < width; ++i)
        if (axis[i] == ' ')
            axis[i] = '-';
    out << rtrim(axis) << '\n' << rtrim(numbers) << '\n';
    return out.str();
}

std::string chart_svg(const json& chart, const std::optional<Window>& window)
{
    const Parsed p = parse(chart, window);
    constexpr double unit = 40, margin = 40, spread = 7, radius = 3;
    const auto stems = static_cast<double>(p.window.stem_hi - p.window.stem_lo + 1);
    const double width = 2 * margin + stems * unit;
    const double height = 2 * margin + static_cast<double>(p.top + 2) * unit;

    const auto x_of = [&](long long stem, std::size_t s, std::size_t index) {
        const auto it = p.dots.find({stem, s});
        const double count = it == p.dots.end() ? 1.0 : static_cast<double>(it->second);
        return margin + (static_cast<double>(stem - p.window.stem_lo) + 0.5) * unit +
               (static_cast<double>(index) - (count - 1) / 2) * spread;
    };
    const auto y_of = [&](std::size_t s) {
        return height - margin - (static_cast<double>(s) + 0.5) * unit;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"6\" "
           "markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/>"
           "</marker></defs>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<g stroke=\"#ccc\" stroke-width=\"0.5\">\n";
    for (long long d = p.window.stem_lo; d <= p.window.stem_hi; ++d) {
        const double x = margin + (static_cast<double>(d - p.window.stem_lo) + 0.5) * unit;
        out << "<line x1=\"" << x << "\" y1=\"" << margin << "\" x2=\"" << x << "\" y2=\"" << height - margin
            << "\"/>\n";
    }
    out << "</g>\n<g font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">\n";
    for (long long d = p.window.stem_lo; d <= p.window.stem_hi; ++d)
        out << "<text x=\"" << x_of(d, p.top + 1, 0) << "\" y=\"" << height - margin / 3 << "\">" << d
            << "</text>\n";
    for (std::size_t s = 0; s <= p.top; ++s)
        out << "<text x=\"" << margin / 2 << "\" y=\"" << y_of(s) + 4 << "\">" << s << "</text>\n";
    out << "</g>\n<g stroke=\"black\" stroke-width=\"1.2\">\n";
    for (const auto* lines : {&p.h0, &p.h1}) {
        const long long step = lines == &p.h0 ? 0 : 1;
        for (const auto& l : *lines) {
            if (!inside(p, l.stem) || !inside(p, l.stem + step) || l.s >= p.top)
                continue;
            out << "<line x1=\"" << x_of(l.stem, l.s, l.from) << "\" y1=\"" << y_of(l.s) << "\" x2=\""
                << x_of(l.stem + step, l.s + 1, l.to) << "\" y2=\"" << y_of(l.s + 1) << "\"/>\n";
        }
    }
    for (auto t : p.towers)
        if (inside(p, t))
            out << "<line x1=\"" << x_of(t, p.top, 0) << "\" y1=\"" << y_of(p.top) << "\" x2=\"" << x_of(t, p.top, 0)
                << "\" y2=\"" << y_of(p.top) - 0.7 * unit << "\" marker-end=\"url(#arrow)\"/>\n";
    out << "</g>\n<g fill=\"black\">\n";
    for (const auto& [key, mult] : p.dots) {
        if (!inside(p, key.first) || key.second > p.top)
            continue;
        for (std::size_t i = 0; i < mult; ++i)
            out << "<circle cx=\"" << x_of(key.first, key.second, i) << "\" cy=\"" << y_of(key.second) << "\" r=\""
                << radius << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace obstructa::render
