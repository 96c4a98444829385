#include "obstructa/cli.hpp"

#include "obstructa/cohomology.hpp"
#include "obstructa/derivations.hpp"
#include "obstructa/dyadic.hpp"
#include "obstructa/error.hpp"
#include "obstructa/expr.hpp"
#include "obstructa/fixtures.hpp"
#include "obstructa/lifting.hpp"
#include "obstructa/mpt.hpp"
#include "obstructa/render.hpp"
#include "obstructa/resolution.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

namespace obstructa::cli {

namespace {

using dyadic::Natural;
using nlohmann::json;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Common {
    std::string n;
    std::string expect;
    std::string format = "text";

    std::optional<Natural> n_value() const
    {
        if (n.empty())
            return std::nullopt;
        const auto e = AffineExpr::parse(n);
        if (!e.is_constant())
            throw UsageError("--n must be a number");
        return e.eval(0);
    }

    // Evaluates an argument such as "16n+10" at --n.
    Natural value(const std::string& text, const char* what) const
    {
        const auto e = AffineExpr::parse(text);
        if (e.is_constant())
            return e.eval(0);
        const auto v = n_value();
        if (!v)
            throw UsageError(std::string(what) + " '" + text + "' depends on n; pass --n");
        return e.eval(*v);
    }

    Natural required_n() const
    {
        const auto v = n_value();
        if (!v)
            throw UsageError("--n is required");
        return *v;
    }
};

CLI::App* command(CLI::App& parent, std::deque<Common>& commons, const std::string& name, const std::string& help,
                  std::vector<std::string> formats = {"text"})
{
    auto* sub = parent.add_subcommand(name, help);
    auto& c = commons.emplace_back();
    sub->add_option("--n", c.n, "value of n for symbolic arguments");
    sub->add_option("--expect", c.expect, "expected result; exit 3 on mismatch");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
    return sub;
}

int mismatch(std::ostream& err, const Common& c, const std::string& value)
{
    if (!c.expect.empty() && c.expect != value) {
        err << "expected \"" << c.expect << "\", got \"" << value << "\"\n";
        return exit_mismatch;
    }
    return exit_ok;
}

int verdict(std::ostream& out, std::ostream& err, const Common& c, const std::string& value)
{
    out << value << '\n';
    return mismatch(err, c, value);
}

int no_expect(const Common& c, const char* what)
{
    if (!c.expect.empty())
        throw UsageError(std::string("--expect is not supported by ") + what);
    return exit_ok;
}

// "Sq2Sq3", "Sq2 Sq3", "2,3" and "1" (the identity).
cohomology::SteenrodWord parse_word(const std::string& text)
{
    std::vector<cohomology::Degree> factors;
    std::size_t i = 0;
    const auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
    };
    skip();
    if (text.substr(i) == "1")
        return {};
    while (i < text.size()) {
        if (text.compare(i, 2, "Sq") == 0)
            i += 2;
        const auto start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        if (start == i)
            throw UsageError("cannot read Steenrod word '" + text + "'");
        factors.push_back(std::stoull(text.substr(start, i - start)));
        skip();
    }
    if (factors.empty())
        throw UsageError("empty Steenrod word");
    return cohomology::SteenrodWord(factors);
}

mpt::MptModel load_model(const std::string& source)
{
    if (std::filesystem::is_regular_file(source)) {
        std::ifstream in(source);
        std::ostringstream text;
        text << in.rdbuf();
        return mpt::parse_relations(text.str());
    }
    if (std::filesystem::is_regular_file(fixtures::directory() / source))
        return fixtures::read_model(source);
    throw Error("no relation file '" + source + "' here or in " + fixtures::directory().string());
}

std::set<mpt::Label> labels(const std::vector<std::string>& texts)
{
    std::set<mpt::Label> out;
    for (const auto& t : texts)
        out.insert(mpt::Label::parse(t));
    return out;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Obstruction-theory computations for real projective spaces", "obstructa"};
    app.require_subcommand(1);
    std::deque<Common> commons;
    std::function<int()> action;

    // nu-binom
    std::string nb_m, nb_k;
    auto* nb = command(app, commons, "nu-binom", "2-adic valuation of C(M, K)");
    nb->add_option("M", nb_m)->required();
    nb->add_option("K", nb_k)->required();
    nb->callback([&, &c = commons.back()] {
        action = [&] {
            return verdict(out, err, c, dyadic::nu_binom(c.value(nb_m, "M"), c.value(nb_k, "K")).str());
        };
    });

    // sq-eval
    std::string sq_word_text, sq_deg, sq_top;
    auto* sqe = command(app, commons, "sq-eval", "apply a Steenrod word to x^DEG in H*(P^N)");
    sqe->add_option("WORD", sq_word_text, "e.g. Sq2Sq3 or 2,3")->required();
    sqe->add_option("DEG", sq_deg)->required();
    sqe->add_option("--top", sq_top, "N; defaults to no truncation below the result degree");
    sqe->callback([&, &c = commons.back()] {
        action = [&] {
            const auto word = parse_word(sq_word_text);
            const auto d = dyadic::to_u64(c.value(sq_deg, "DEG"));
            const auto top = sq_top.empty() ? d + word.degree() : dyadic::to_u64(c.value(sq_top, "--top"));
            const auto x = cohomology::CohomologyClass::monomial(top, d);
            return verdict(out, err, c, cohomology::sq_word(word, x).to_string());
        };
    });

    // sw
    std::string sw_p, sw_i, sw_top;
    auto* sw = command(app, commons, "sw", "Stiefel-Whitney class w_I (or total class) of P times the Hopf bundle");
    sw->add_option("P", sw_p)->required();
    sw->add_option("I", sw_i);
    sw->add_option("--top", sw_top, "dimension N of P^N")->required();
    sw->callback([&, &c = commons.back()] {
        action = [&] {
            const cohomology::BundleData b{c.value(sw_p, "P"), dyadic::to_u64(c.value(sw_top, "--top"))};
            const auto w = sw_i.empty() ? cohomology::total_sw_class(b)
                                        : cohomology::sw_class(b, dyadic::to_u64(c.value(sw_i, "I")));
            return verdict(out, err, c, w.to_string());
        };
    });

    // ko-order
    std::string ko_i, ko_m;
    auto* ko = command(app, commons, "ko-order", "exponent of 2 in |ko_{4i-1}(P_m)|", {"text", "json"});
    ko->add_option("--i", ko_i)->required();
    ko->add_option("--m", ko_m)->required();
    ko->callback([&, &c = commons.back()] {
        action = [&] {
            const auto i = c.value(ko_i, "--i");
            const auto m = c.value(ko_m, "--m");
            const auto r = ext::ko_order_detail(i, m);
            if (c.format == "json") {
                out << json{{"i", i.str()},
                            {"m", m.str()},
                            {"nu", r.nu},
                            {"window", {{"s_max", r.window.s_max}, {"top", r.window.top}, {"t_max", r.window.t_max}}}}
                           .dump(2)
                    << '\n';
                return mismatch(err, c, std::to_string(r.nu));
            }
            return verdict(out, err, c, std::to_string(r.nu));
        };
    });

    // ext-chart
    std::string ec_m, ec_hi, ec_lo, ec_input;
    auto* ec = command(app, commons, "ext-chart", "Ext over A(1) of P_m through a stem", {"text", "json", "svg"});
    ec->add_option("--m", ec_m, "bottom cell");
    ec->add_option("--stem-hi", ec_hi, "last stem");
    ec->add_option("--stem-lo", ec_lo, "first stem drawn");
    ec->add_option("--input", ec_input, "render a chart JSON file instead of computing");
    ec->callback([&, &c = commons.back()] {
        action = [&] {
            no_expect(c, "ext-chart");
            json chart;
            if (!ec_input.empty()) {
                if (!ec_m.empty() || !ec_hi.empty())
                    throw UsageError("--input excludes --m and --stem-hi");
                chart = read_json_file(ec_input);
            } else {
                if (ec_m.empty() || ec_hi.empty())
                    throw UsageError("--m and --stem-hi are required without --input");
                chart = ext::chart_to_json(ext::stunted_chart(dyadic::to_u64(c.value(ec_m, "--m")),
                                                              dyadic::to_u64(c.value(ec_hi, "--stem-hi"))));
            }
            std::optional<render::Window> window;
            if (!ec_lo.empty()) {
                const auto hi = chart.at("stem_range").at(1).get<long long>();
                window = render::Window{static_cast<long long>(c.value(ec_lo, "--stem-lo")), hi};
            }
            if (c.format == "json")
                out << ext::chart_to_json(ext::chart_from_json(chart)).dump() << '\n';
            else if (c.format == "svg")
                out << render::chart_svg(chart, window);
            else
                out << render::chart_text(chart, window);
            return exit_ok;
        };
    });

    // bo-lift
    std::string bl_p, bl_k, bl_m;
    auto* bl = command(app, commons, "bo-lift", "does p times the quaternionic Hopf bundle over HP^k lift to B^o(m)",
                       {"text", "json"});
    bl->add_option("--p", bl_p)->required();
    bl->add_option("--k", bl_k)->required();
    bl->add_option("--m", bl_m)->required();
    bl->callback([&, &c = commons.back()] {
        action = [&] {
            const lifting::LiftQuery q{c.value(bl_p, "--p"), c.value(bl_k, "--k"), c.value(bl_m, "--m")};
            const auto v = lifting::bo_lift_decision(q);
            const std::string answer = v.lifts ? "yes" : "no";
            if (c.format == "json") {
                out << lifting::to_json(q, v).dump(2) << '\n';
            } else {
                out << answer << '\n';
                if (!v.dimension_ok)
                    out << "  m = " << q.m << " < 2k = " << 2 * q.k << '\n';
                for (const auto& f : v.failures)
                    out << "  i = " << f.i << ": nu C(p, i) = " << f.nu_binom << " < nu |ko| = " << f.ko_nu << '\n';
            }
            return mismatch(err, c, answer);
        };
    });

    // mpt
    auto* mp = app.add_subcommand("mpt", "modified Postnikov tower analysis");
    mp->require_subcommand(1);
    std::string mp_file, mp_fiber, mp_relation, mp_candidate;
    unsigned mp_stage = 0;
    std::vector<std::string> mp_if, mp_then;

    auto* mpp = command(*mp, commons, "parse", "check a relation file and print it in normal form");
    mpp->add_option("FILE", mp_file, "path or fixture name")->required();
    mpp->callback([&, &c = commons.back()] {
        action = [&] {
            no_expect(c, "mpt parse");
            const auto model = load_model(mp_file);
            out << mpt::print_relations(model);
            if (const auto n = c.n_value()) {
                const auto inst = model.instantiate(*n);
                out << "# n = " << *n << ": base " << inst.base << ", space " << inst.space_dim << ", bundle "
                    << inst.bundle.multiple << '\n';
            }
            return exit_ok;
        };
    });

    auto* mpv = command(*mp, commons, "vary", "k-invariant changes from varying through one fiber", {"text", "json"});
    mpv->add_option("FILE", mp_file)->required();
    mpv->add_option("--stage", mp_stage)->required();
    mpv->add_option("--fiber", mp_fiber, "stage-1 label such as k(b+3)@1")->required();
    mpv->callback([&, &c = commons.back()] {
        action = [&] {
            no_expect(c, "mpt vary");
            const auto deltas =
                mpt::variation_delta(load_model(mp_file), mp_stage, mpt::Label::parse(mp_fiber), c.required_n());
            if (c.format == "json")
                out << mpt::to_json(deltas).dump(2) << '\n';
            else
                for (const auto& d : deltas)
                    out << d.k_invariant.to_string() << ": " << d.change.to_string() << '\n';
            return exit_ok;
        };
    });

    auto* mpm = command(*mp, commons, "matrix", "variation matrix of a stage", {"text", "json"});
    mpm->add_option("FILE", mp_file)->required();
    mpm->add_option("--stage", mp_stage)->required();
    mpm->callback([&, &c = commons.back()] {
        action = [&] {
            no_expect(c, "mpt matrix");
            const auto m = mpt::variation_matrix(load_model(mp_file), mp_stage, c.required_n());
            if (c.format == "json") {
                out << mpt::to_json(m).dump(2) << '\n';
                return exit_ok;
            }
            for (std::size_t r = 0; r < m.rows.size(); ++r) {
                out << m.rows[r].to_string() << " [x^" << m.row_dims[r] << "]:";
                const auto flips = m.flips(r);
                if (flips.empty())
                    out << " none";
                for (const auto& l : flips)
                    out << ' ' << l.to_string();
                out << '\n';
            }
            return exit_ok;
        };
    });

    auto* mpi = command(*mp, commons, "implies", "does every combination flipping --if also flip one of --then");
    mpi->add_option("FILE", mp_file)->required();
    mpi->add_option("--stage", mp_stage)->required();
    mpi->add_option("--if", mp_if)->required()->delimiter(',');
    mpi->add_option("--then", mp_then)->required()->delimiter(',');
    mpi->callback([&, &c = commons.back()] {
        action = [&] {
            const auto m = mpt::variation_matrix(load_model(mp_file), mp_stage, c.required_n());
            return verdict(out, err, c, mpt::check_implication(m, labels(mp_if), labels(mp_then)) ? "true" : "false");
        };
    });

    auto* mpk = command(*mp, commons, "kernel", "is the variation matrix of a stage injective");
    mpk->add_option("FILE", mp_file)->required();
    mpk->add_option("--stage", mp_stage)->required();
    mpk->callback([&, &c = commons.back()] {
        action = [&] {
            const auto m = mpt::variation_matrix(load_model(mp_file), mp_stage, c.required_n());
            return verdict(out, err, c, mpt::kernel_trivial(m) ? "true" : "false");
        };
    });

    auto* mpf = command(*mp, commons, "forced", "must the candidate pullback vanish");
    mpf->add_option("FILE", mp_file)->required();
    mpf->add_option("--stage", mp_stage, "stage of the candidate")->required();
    mpf->add_option("--relation", mp_relation, "relation label of the next stage")->required();
    mpf->add_option("--candidate", mp_candidate)->required();
    mpf->callback([&, &c = commons.back()] {
        action = [&] {
            const bool forced = mpt::forced_vanishing(load_model(mp_file), mp_stage, mpt::Label::parse(mp_relation),
                                                      mpt::Label::parse(mp_candidate), c.required_n());
            return verdict(out, err, c, forced ? "true" : "false");
        };
    });

    // reproduce
    std::string rp_theorem;
    bool rp_replay = false;
    auto* rp = command(app, commons, "reproduce", "run a theorem derivation", {"text", "json"});
    rp->add_option("THEOREM", rp_theorem)->required()->check(CLI::IsMember({"thm1.1-2", "thm1.2", "lemma3.5"}));
    rp->add_flag("--replay", rp_replay, "run the derivation twice and compare");
    rp->callback([&, &c = commons.back()] {
        action = [&] {
            const auto record = derivations::derive(rp_theorem, c.required_n());
            if (c.format == "json")
                out << derivations::to_json(record).dump(2) << '\n';
            else
                out << derivations::transcript(record);
            if (rp_replay && !derivations::replay(record)) {
                err << "replay differs\n";
                return exit_mismatch;
            }
            return mismatch(err, c, record.conclusion.text());
        };
    });

    // fixtures
    auto* fx = app.add_subcommand("fixtures", "inspect and verify the data files");
    fx->require_subcommand(1);
    auto* fxv = command(*fx, commons, "verify", "recompute every fixture that has an engine counterpart");
    fxv->callback([&, &c = commons.back()] {
        action = [&] {
            no_expect(c, "fixtures verify");
            const auto n = c.n_value();
            const auto checks = n ? fixtures::verify_all(*n, *n) : fixtures::verify_all();
            std::size_t failed = 0;
            for (const auto& k : checks) {
                out << (k.ok ? "ok   " : "FAIL ") << k.name << (k.detail.empty() ? "" : ": " + k.detail) << '\n';
                failed += k.ok ? 0 : 1;
            }
            out << checks.size() - failed << "/" << checks.size() << " checks passed\n";
            return failed ? exit_mismatch : exit_ok;
        };
    });
    auto* fxl = command(*fx, commons, "list", "print the fixture directory and its files");
    fxl->callback([&, &c = commons.back()] {
        action = [&] {
            no_expect(c, "fixtures list");
            const auto dir = fixtures::directory();
            out << dir.string() << '\n';
            std::vector<std::string> names;
            for (const auto& e : std::filesystem::directory_iterator(dir))
                if (e.is_regular_file())
                    names.push_back(e.path().filename().string());
            std::sort(names.begin(), names.end());
            for (const auto& name : names)
                out << "  " << name << '\n';
            return exit_ok;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        return action ? action() : exit_usage;
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

}  // namespace obstructa::cli
