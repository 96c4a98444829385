#include "obstructa/derivations.hpp"

#include "obstructa/error.hpp"
#include "obstructa/json_natural.hpp"
#include "obstructa/lifting.hpp"
#include "obstructa/mpt.hpp"
#include "obstructa/resolution.hpp"

#include <algorithm>
#include <deque>
#include <tuple>
#include <sstream>

namespace obstructa::derivations {

namespace {

using mpt::Label;

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

std::string bool_text(bool b)
{
    return b ? "true" : "false";
}

std::string label_set(const std::vector<Label>& labels)
{
    std::string out = "{";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out += (i ? ", " : "") + labels[i].to_string();
    return out + "}";
}

template <class T>
std::string number_set(const T& values)
{
    std::string out = "{";
    bool first = true;
    for (const auto& v : values) {
        std::ostringstream s;
        s << v;
        out += (first ? "" : ", ") + s.str();
        first = false;
    }
    return out + "}";
}

unsigned alpha_of(const Natural& n)
{
    return dyadic::alpha(n).convert_to<unsigned>();
}

Statement make(Kind kind, Status status, const Natural& space, const Natural& target)
{
    Statement s;
    s.kind = kind;
    s.status = status;
    s.space = space;
    s.target = target;
    return s;
}

std::vector<Label> labels(std::initializer_list<const char*> texts)
{
    std::vector<Label> out;
    for (const char* t : texts)
        out.push_back(Label::parse(t));
    return out;
}

// Accumulates one derivation record.
class Chain {
public:
    Chain(std::string theorem, const Natural& n) : registry_(fixtures::AxiomRegistry::load())
    {
        record_.theorem = std::move(theorem);
        record_.n = n;
        if (!registry_.stale_ids().empty())
            throw VerdictMismatch("axiom registry has stale content ids; run 'fixtures verify'");
    }

    std::string axiom(const std::string& name)
    {
        const auto& a = registry_.get(name);
        assume(a.id + " " + a.name + ": " + a.text);
        return "axiom " + a.name + " [" + a.id + "]";
    }

    std::string fixture(const std::string& file)
    {
        assume("fixture " + file);
        return "fixture " + file;
    }

    Step& step(std::string rule, std::vector<std::string> inputs)
    {
        steps_.push_back(Step{std::move(rule), std::move(inputs), {}, {}});
        return steps_.back();
    }

    // Reference to the most recent step.
    std::string ref() const { return "step " + std::to_string(steps_.size()); }

    void check(Step& s, std::string name, std::string value, std::string expected)
    {
        if (value != expected)
            throw VerdictMismatch(record_.theorem + " at n = " + record_.n.str() + ": " + name + " is " + value +
                                  ", the chain needs " + expected);
        s.verdicts.push_back({std::move(name), std::move(value), std::move(expected)});
    }

    Statement conclude(Step& s, Statement st)
    {
        if (st.status != Status::axiom)
            st.justification.push_back(ref() + " (" + s.rule + ")");
        const auto id = ledger_.append(st);
        s.conclusion = id + ": " + st.text();
        return st;
    }

    void note(Step& s, std::string text) { s.conclusion = std::move(text); }

    DerivationRecord finish(Statement conclusion)
    {
        record_.conclusion = std::move(conclusion);
        record_.steps.assign(steps_.begin(), steps_.end());
        record_.statements = ledger_.snapshot();
        return std::move(record_);
    }

private:
    void assume(std::string entry)
    {
        if (std::find(record_.assumptions.begin(), record_.assumptions.end(), entry) == record_.assumptions.end())
            record_.assumptions.push_back(std::move(entry));
    }

    fixtures::AxiomRegistry registry_;
    Ledger ledger_;
    std::deque<Step> steps_;
    DerivationRecord record_;
};

void require_alpha(const Natural& n, bool ok, const std::string& condition, const std::string& theorem)
{
    dyadic::require_natural(n, "n");
    if (n == 0 || !ok)
        throw DomainError(theorem + " requires " + condition + "; alpha(" + n.str() + ") = " +
                          std::to_string(n == 0 ? 0 : alpha_of(n)));
}

unsigned table_ko_nu(const nlohmann::json& charts, const std::string& i, const std::string& m)
{
    const auto& t = charts.at("ko_orders");
    for (const auto& row : t.at("rows"))
        if (row.at("i") == i)
            for (std::size_t c = 0; c < t.at("columns").size(); ++c)
                if (t.at("columns")[c] == m)
                    return row.at("nu")[c].get<unsigned>();
    for (const auto& e : t.at("extra"))
        if (e.at("i") == i && e.at("m") == m)
            return e.at("nu").get<unsigned>();
    throw Error("charts.json has no ko order for i=" + i + " m=" + m);
}

std::string lift_text(const lifting::LiftQuery& q)
{
    return "bo-lift p=" + q.p.str() + " k=" + q.k.str() + " m=" + q.m.str();
}

// The stunted lifting lemma: 16n xi over P^{8n+2}, through 4nH_{2n}, factors
// through the geometric-dimension fibration at 8n-5.
Statement lemma_steps(Chain& c, const Natural& n)
{
    const auto charts = fixtures::read_json("charts.json");
    const Natural four_n = 4 * n, two_n = 2 * n;
    const Natural m5 = 8 * n - 5;

    auto& s1 = c.step("ko orders by minimal resolution", {c.fixture("charts.json")});
    const auto nu_a = ext::ko_order(two_n - 1, m5);
    const auto nu_b = ext::ko_order(two_n, m5);
    c.check(s1, "nu |ko_{8n-5}(P_{8n-5})|", nu_a.str(), std::to_string(table_ko_nu(charts, "2n-1", "8n-5")));
    c.check(s1, "nu |ko_{8n-1}(P_{8n-5})|", nu_b.str(), std::to_string(table_ko_nu(charts, "2n", "8n-5")));
    c.note(s1, "ko orders 1 and 4 in stems 8n-5 and 8n-1 of P_{8n-5}");
    const auto ref_ko = c.ref();

    auto& s2 = c.step("binomial valuations", {});
    c.check(s2, "nu C(4n, 2n-1) > 2", bool_text(dyadic::nu_binom(four_n, two_n - 1) > 2), "true");
    c.check(s2, "nu C(4n, 2n) = alpha(n)", bool_text(dyadic::nu_binom(four_n, two_n) == dyadic::alpha(n)), "true");
    c.note(s2, "nu C(4n, 2n) = " + std::to_string(alpha_of(n)));
    const auto ref_bin = c.ref();

    auto& s3 = c.step("kernel of pi -> ko on the fiber P_{8n-5}",
                      {c.fixture("charts.json"), c.axiom("homotopy-charts"), c.axiom("ext-surjectivity-8n-5")});
    const auto pi = fixtures::homotopy_charts(charts);
    const auto ko = fixtures::ko_panels(charts);
    const auto& ko_panel = fixtures::find_chart(ko, "ko-P8n-5");
    const auto panel_diff = fixtures::compare_ko_panel(ko_panel, n);
    c.check(s3, "ko-P8n-5 panel equals computed chart", yes_no(panel_diff.empty()), "yes");
    const auto kernel = fixtures::kernel_stems(fixtures::find_chart(pi, "pi-P8n-5"), ko_panel, 64);
    c.check(s3, "kernel stems relative to 8n", number_set(kernel), "{-2, 0, 1}");
    std::set<Natural> fiber_degrees;
    for (auto s : kernel)
        fiber_degrees.insert(Natural(Integer(8 * n) + s));
    c.note(s3, "pi_*(F) is nonzero only in stems " + number_set(fiber_degrees));
    const auto ref_kernel = c.ref();

    auto& s4 = c.step("pullback-through-fiber", {c.axiom("pullback-through-fiber"), ref_kernel});
    const auto obstructions = mpt::quaternionic_pullback_check(fiber_degrees, two_n);
    c.check(s4, "obstruction degrees in H^*(HP^{2n})", number_set(obstructions), "{}");
    c.note(s4, "maps HP^{2n} -> B^o(8n-5) pull back to BSp(8n-5)");
    const auto ref_pull = c.ref();

    auto& s5 = c.step("bo-lifting-criterion", {c.axiom("bo-lifting-criterion"), ref_ko, ref_bin});
    const auto lift = [&](const Natural& p, const Natural& k, const Natural& m) {
        return lifting::bo_lift_decision({p, k, m}).lifts;
    };
    const unsigned a = alpha_of(n);
    c.check(s5, lift_text({four_n, two_n, m5}), yes_no(lift(four_n, two_n, m5)), yes_no(a > 3));
    if (a == 3) {
        c.check(s5, lift_text({four_n, two_n, m5 + 2}), yes_no(lift(four_n, two_n, m5 + 2)), "yes");
        c.check(s5, lift_text({four_n, two_n - 1, m5}), yes_no(lift(four_n, two_n - 1, m5)), "yes");
    }
    Statement bo = make(Kind::lifting, Status::derived, 2 * n, m5);
    bo.classifier = "B^o(" + m5.str() + ")";
    bo.bundle = four_n.str() + "H over HP^" + two_n.str();
    if (a == 3) {
        bo.classifier = "the third stage over B^o(" + m5.str() + ")";
        s5.inputs.push_back(c.axiom("alpha3-third-stage"));
    }
    c.conclude(s5, bo);
    const auto ref_bo = c.ref();

    auto& s6 = c.step("quaternionic-factorization", {c.axiom("quaternionic-factorization"), ref_pull, ref_bo});
    c.check(s6, "4 * 4n = 16n", bool_text(4 * four_n == 16 * n), "true");
    c.check(s6, "8n+2 <= 4 * 2n + 3", bool_text(8 * n + 2 <= 4 * two_n + 3), "true");
    Statement out = make(Kind::lifting, Status::derived, 8 * n + 2, m5);
    out.bundle = (16 * n).str() + "xi over P^" + (8 * n + 2).str() + " (through HP^" + two_n.str() + ")";
    out.classifier = "BSp(" + m5.str() + ")";
    return c.conclude(s6, out);
}

}  // namespace

std::string_view kind_name(Kind k)
{
    switch (k) {
    case Kind::immersion: return "immersion";
    case Kind::no_immersion: return "no-immersion";
    case Kind::embedding: return "embedding";
    case Kind::section_count: return "section-count";
    case Kind::lifting: return "lifting";
    case Kind::no_lifting: return "no-lifting";
    }
    return "?";
}

std::string_view status_name(Status s)
{
    switch (s) {
    case Status::axiom: return "axiom";
    case Status::derived: return "derived";
    case Status::refuted: return "refuted";
    }
    return "?";
}

std::string Statement::text() const
{
    switch (kind) {
    case Kind::immersion: return "P^" + space.str() + " immerses in R^" + target.str();
    case Kind::no_immersion: return "P^" + space.str() + " does not immerse in R^" + target.str();
    case Kind::embedding:
        return "P^" + space.str() + " embeds in " + (sphere ? "S^" : "R^") + target.str();
    case Kind::section_count:
        return bundle + " has " + target.str() + " linearly independent sections";
    case Kind::lifting: return bundle + " factors through " + classifier;
    case Kind::no_lifting: return bundle + " does not factor through " + classifier;
    }
    return "?";
}

Statement sanderson_reduce(const Natural& n, const Natural& k)
{
    dyadic::require_natural(n, "n");
    dyadic::require_natural(k, "k");
    Statement s = make(Kind::lifting, Status::derived, n, k);
    s.bundle = (n + k + 1).str() + "xi over P^" + n.str();
    s.classifier = "BO(" + k.str() + ")";
    s.justification.push_back("sanderson: equivalent to P^" + n.str() + " immersing in R^" + (n + k).str());
    return s;
}

NormalTwist normal_twist_identity(const Natural& p, const Natural& q)
{
    dyadic::require_natural(p, "p");
    dyadic::require_natural(q, "q");
    if (p < q)
        throw DomainError("ambient dimension below manifold dimension");
    NormalTwist t{p + 1, p - q, {}};
    t.statement = make(Kind::lifting, Status::derived, q, p - q);
    t.statement.bundle = "theta = nu (x) xi_" + q.str() + " over P^" + q.str() + ", stably " + (p + 1).str() +
                         "xi, of rank " + (p - q).str();
    t.statement.classifier = "BO(" + (p - q).str() + ")";
    t.statement.justification.push_back("normal twist of P^" + q.str() + " in R^" + p.str());
    return t;
}

NormalTwist normal_twist_identity(const Statement& embedding)
{
    if (embedding.kind != Kind::embedding || embedding.sphere || embedding.status == Status::refuted)
        throw VerdictMismatch("normal twist needs an embedding premise, got: " + embedding.text());
    return normal_twist_identity(embedding.target, embedding.space);
}

Statement mahowald_step(const Statement& embed, const Statement& sections, std::pair<Natural, Natural> sphere,
                        const std::optional<Statement>& sphere_embedding)
{
    const auto& [s, m] = sphere;
    if (embed.kind != Kind::embedding || embed.sphere || embed.status == Status::refuted)
        throw VerdictMismatch("missing premise: an embedding P^q in R^p");
    if (s > 0) {
        if (sections.kind != Kind::section_count || sections.status == Status::refuted ||
            sections.space != embed.space || sections.target < s)
            throw VerdictMismatch("missing premise: " + s.str() + " sections of nu (x) xi_" + embed.space.str());
        if (!sphere_embedding || sphere_embedding->kind != Kind::embedding || !sphere_embedding->sphere ||
            sphere_embedding->space != s - 1 || sphere_embedding->target != m - 1)
            throw VerdictMismatch("missing premise: P^" + Natural(s - 1).str() + " embeds in S^" +
                                  (m > 0 ? Natural(m - 1).str() : std::string("-1")));
    }
    Statement out = make(Kind::embedding, Status::derived, embed.space + s, embed.target + m);
    out.justification.push_back("inductive embedding step from " + embed.text());
    return out;
}

bool haefliger_ok(const Natural& ambient, const Natural& manifold)
{
    return 2 * ambient >= 3 * manifold;
}

std::string Ledger::append(Statement s)
{
    if (s.status == Status::derived && s.justification.empty())
        throw VerdictMismatch("derived statement without justification: " + s.text());
    std::lock_guard lock(mutex_);
    entries_.push_back(std::move(s));
    return "S" + std::to_string(entries_.size());
}

std::vector<Statement> Ledger::snapshot() const
{
    std::lock_guard lock(mutex_);
    return entries_;
}

std::size_t Ledger::size() const
{
    std::lock_guard lock(mutex_);
    return entries_.size();
}

DerivationRecord derive_nonimmersion_2(const Natural& n)
{
    require_alpha(n, n > 0 && alpha_of(n) == 2, "alpha(n) = 2", "thm1.1-2");
    Chain c("thm1.1-2", n);
    const auto charts = fixtures::read_json("charts.json");
    const Natural N = 16 * n + 10, p = 8 * n + 3, k1 = 4 * n + 1, k2 = 4 * n + 2, m1 = 16 * n + 1;

    auto& gate = c.step("gate", {});
    c.check(gate, "alpha(n)", std::to_string(alpha_of(n)), "2");
    c.note(gate, "n = " + n.str());

    auto& s_san = c.step("sanderson", {c.axiom("sanderson")});
    const auto target = sanderson_reduce(N, m1);
    c.check(s_san, "bundle multiple n+k+1", (N + m1 + 1).str(), (32 * n + 12).str());
    c.note(s_san, "P^" + N.str() + " immerses in R^" + (N + m1).str() + " iff " + target.text());
    const auto ref_san = c.ref();

    auto& s_bin = c.step("binomial valuations", {});
    const auto v1 = dyadic::nu_binom(p, k1), v2 = dyadic::nu_binom(p, k2);
    const auto kummer = Integer(dyadic::alpha(k1)) + dyadic::alpha(k2) - dyadic::alpha(p);
    c.check(s_bin, "nu C(8n+3, 4n+1)", v1.str(), "2");
    c.check(s_bin, "nu C(8n+3, 4n+2)", v2.str(), "2");
    c.check(s_bin, "alpha(4n+1) + alpha(4n+2) - alpha(8n+3)", kummer.str(), "2");
    c.note(s_bin, "both valuations equal alpha(n) = 2");
    const auto ref_bin = c.ref();

    auto& s_ko = c.step("ko orders by minimal resolution", {c.fixture("charts.json")});
    for (const char* i : {"4n+1", "4n+2"})
        for (const char* m : {"16n+1", "16n+2", "16n+5", "16n+6"}) {
            const auto got = ext::ko_order(AffineExpr::parse(i).eval(n), AffineExpr::parse(m).eval(n));
            c.check(s_ko, std::string("nu ko_{4i-1}(P_m) i=") + i + " m=" + m, got.str(),
                    std::to_string(table_ko_nu(charts, i, m)));
        }
    c.note(s_ko, "ko-order table reproduced");
    const auto ref_ko = c.ref();

    auto& s_lift = c.step("bo-lifting-criterion", {c.axiom("bo-lifting-criterion"), ref_bin, ref_ko});
    const auto lift = [&](const Natural& k, const Natural& m) {
        const lifting::LiftQuery q{p, k, m};
        c.check(s_lift, lift_text(q), yes_no(lifting::bo_lift_decision(q).lifts),
                yes_no(m == 16 * n + 2 || m == 16 * n + 6));
    };
    lift(k1, 16 * n + 1);
    lift(k1, 16 * n + 2);
    lift(k2, 16 * n + 5);
    lift(k2, 16 * n + 6);
    Statement lev2o = make(Kind::lifting, Status::derived, k2, m1);
    lev2o.bundle = p.str() + "H over HP^" + k2.str();
    lev2o.classifier = "E_2 over B^o(" + m1.str() + ") with k2(16n+4), k2(16n+8) nonzero";
    s_lift.inputs.push_back(c.axiom("mpt-map"));
    c.conclude(s_lift, lev2o);
    const auto ref_lift = c.ref();

    auto& s_pull = c.step("pullback-through-fiber", {c.fixture("charts.json"), c.axiom("homotopy-charts"),
                                                     c.axiom("ext-surjectivity-16n+1"),
                                                     c.axiom("pullback-through-fiber"), ref_lift});
    const auto pi = fixtures::homotopy_charts(charts);
    const auto ko = fixtures::ko_panels(charts);
    const auto& panel = fixtures::find_chart(ko, "ko-P16n+1");
    c.check(s_pull, "ko-P16n+1 panel equals computed chart", yes_no(fixtures::compare_ko_panel(panel, n).empty()),
            "yes");
    const auto kernel = fixtures::kernel_stems(fixtures::find_chart(pi, "pi-P16n+1"), panel, 1);
    c.check(s_pull, "filtration <= 1 kernel stems relative to 16n", number_set(kernel), "{4, 6, 8, 8}");
    std::set<Natural> fiber_degrees;
    for (auto s : kernel)
        fiber_degrees.insert(16 * n + s);
    c.check(s_pull, "obstruction degrees in H^*(HP^{4n+2})",
            number_set(mpt::quaternionic_pullback_check(fiber_degrees, k2)), "{}");
    Statement lev2 = make(Kind::lifting, Status::derived, k2, m1);
    lev2.bundle = lev2o.bundle;
    lev2.classifier = "E_2 over BSp(" + m1.str() + ") with k2(16n+4), k2(16n+8) nonzero";
    c.conclude(s_pull, lev2);
    const auto ref_lev2 = c.ref();

    const auto model = fixtures::read_model("nonimmersion.mpt");
    const auto inst = model.instantiate(n);

    auto& s_w = c.step("bundle classes", {c.fixture("nonimmersion.mpt"), c.axiom("relation-tables")});
    c.check(s_w, "w4((32n+12)xi)", cohomology::sw_class(inst.bundle, 4).to_string(), "x^4");
    c.check(s_w, "w8((32n+12)xi)", cohomology::sw_class(inst.bundle, 8).to_string(), "x^8");
    c.note(s_w, "w4 and w8 are nonzero");
    const auto ref_w = c.ref();

    auto& s_prim = c.step("primary indeterminacy", {c.fixture("nonimmersion.mpt"), ref_lev2, ref_w});
    const auto m2 = mpt::variation_matrix(model, 2, n);
    const std::vector<std::pair<const char*, std::vector<Label>>> stage2 = {
        {"k(b+3)@1", labels({"k(b+4)@2", "k'(b+8)@2"})},
        {"k(b+4)@1", labels({"k(b+4)@2", "k(b+8)@2", "k(b+9)@2", "k'(b+10)@2"})},
        {"k(b+5)@1", {}},
        {"k(b+7)@1", {}},
        {"k(b+8)@1", labels({"k(b+8)@2", "k(b+10)@2"})},
        {"k(b+9)@1", {}},
        {"k'(b+9)@1", {}},
    };
    for (std::size_t r = 0; r < m2.rows.size(); ++r) {
        const auto it = std::find_if(stage2.begin(), stage2.end(),
                                     [&](const auto& e) { return Label::parse(e.first) == m2.rows[r]; });
        if (it == stage2.end())
            throw VerdictMismatch("unexpected stage-2 fiber " + m2.rows[r].to_string());
        c.check(s_prim, "vary through x^" + std::to_string(m2.row_dims[r]) + " (" + m2.rows[r].to_string() + ")",
                label_set(m2.flips(r)), label_set(it->second));
    }
    const bool implies = mpt::check_implication(m2, {Label::parse("k(b+4)@2"), Label::parse("k(b+8)@2")},
                                                {Label::parse("k(b+10)@2"), Label::parse("k'(b+10)@2")});
    c.check(s_prim, "clearing k(b+4)@2 and k(b+8)@2 flips k(b+10)@2 or k'(b+10)@2", bool_text(implies), "true");
    Statement stuck = make(Kind::no_lifting, Status::derived, k2, m1);
    stuck.bundle = "every lifting of " + p.str() + "H over HP^" + k2.str() + " to E_2 restricted to P^" + N.str();
    stuck.classifier = "E_3";
    c.conclude(s_prim, stuck);
    const auto ref_prim = c.ref();

    auto& s_sec = c.step("secondary indeterminacy", {c.fixture("nonimmersion.mpt"), ref_prim});
    const auto m1x = mpt::variation_matrix(model, 1, n);
    const std::vector<std::pair<const char*, std::vector<Label>>> stage1 = {
        {"w(b+2)", labels({"k(b+4)@1", "k(b+5)@1", "k'(b+9)@1"})},
        {"w(b+4)", labels({"k(b+4)@1", "k(b+7)@1", "k(b+8)@1", "k'(b+9)@1"})},
        {"w(b+8)", labels({"k(b+8)@1", "k(b+9)@1"})},
    };
    for (std::size_t r = 0; r < m1x.rows.size(); ++r) {
        const auto it = std::find_if(stage1.begin(), stage1.end(),
                                     [&](const auto& e) { return Label::parse(e.first) == m1x.rows[r]; });
        if (it == stage1.end())
            throw VerdictMismatch("unexpected stage-1 fiber " + m1x.rows[r].to_string());
        c.check(s_sec, "vary through x^" + std::to_string(m1x.row_dims[r]) + " (" + m1x.rows[r].to_string() + ")",
                label_set(m1x.flips(r)), label_set(it->second));
    }
    c.check(s_sec, "every nonzero combination changes a level-1 class", bool_text(mpt::kernel_trivial(m1x)), "true");
    Statement nolift = make(Kind::no_lifting, Status::derived, N, m1);
    nolift.bundle = (32 * n + 12).str() + "xi over P^" + N.str() + " (through HP^" + k2.str() + ")";
    nolift.classifier = "BSp(" + m1.str() + ")";
    c.conclude(s_sec, nolift);
    const auto ref_sec = c.ref();

    auto& s_fac = c.step("quaternionic-factorization", {c.axiom("quaternionic-factorization"), ref_sec});
    c.check(s_fac, "4(8n+3) = 32n+12", bool_text(4 * p == 32 * n + 12), "true");
    c.check(s_fac, "16n+10 <= 4(4n+2) + 3", bool_text(N <= 4 * k2 + 3), "true");
    Statement nobo = target;
    nobo.kind = Kind::no_lifting;
    nobo.justification.clear();
    c.conclude(s_fac, nobo);
    const auto ref_fac = c.ref();

    auto& s_end = c.step("sanderson", {c.axiom("sanderson"), ref_san, ref_fac});
    Statement result = make(Kind::no_immersion, Status::derived, N, N + m1);
    c.check(s_end, "ambient dimension 32n+11", (N + m1).str(), (32 * n + 11).str());
    return c.finish(c.conclude(s_end, result));
}

DerivationRecord derive_lemma_3_5(const Natural& n)
{
    require_alpha(n, n > 0 && alpha_of(n) > 2, "alpha(n) > 2", "lemma3.5");
    Chain c("lemma3.5", n);
    auto& gate = c.step("gate", {});
    c.check(gate, "alpha(n) > 2", bool_text(alpha_of(n) > 2), "true");
    c.note(gate, "n = " + n.str() + ", alpha(n) = " + std::to_string(alpha_of(n)));
    return c.finish(lemma_steps(c, n));
}

DerivationRecord derive_embedding(const Natural& n)
{
    require_alpha(n, n > 0 && alpha_of(n) > 2, "alpha(n) > 2", "thm1.2");
    Chain c("thm1.2", n);
    const Natural q = 8 * n + 2, p = 16 * n - 1;

    auto& gate = c.step("gate", {});
    c.check(gate, "alpha(n) > 2", bool_text(alpha_of(n) > 2), "true");
    c.note(gate, "n = " + n.str() + ", alpha(n) = " + std::to_string(alpha_of(n)));

    auto& s_ax = c.step("axiom", {c.axiom("embedding-P8n+2")});
    Statement base = make(Kind::embedding, Status::axiom, q, p);
    base.justification.push_back("axiom embedding-P8n+2");
    c.conclude(s_ax, base);
    const auto ref_ax = c.ref();

    auto& s_tw = c.step("normal twist", {c.axiom("mahowald-step"), ref_ax});
    const auto twist = normal_twist_identity(base);
    c.check(s_tw, "stable class of theta", twist.stable_multiple.str() + "xi", (16 * n).str() + "xi");
    c.check(s_tw, "rank of theta", twist.rank.str(), (8 * n - 3).str());
    c.note(s_tw, twist.statement.bundle);

    lemma_steps(c, n);
    const auto ref_lemma = c.ref();

    auto& s_spin = c.step("spin-reinterpretation", {c.axiom("spin-reinterpretation"), ref_lemma});
    Statement spin = make(Kind::lifting, Status::derived, q, 8 * n - 5);
    spin.bundle = (16 * n).str() + "xi over P^" + q.str();
    spin.classifier = "BSpin(" + (8 * n - 5).str() + ")";
    c.conclude(s_spin, spin);
    const auto ref_spin = c.ref();

    const auto model = fixtures::read_model("embedding.mpt");
    const auto inst = model.instantiate(n);
    auto& s_w = c.step("bundle classes", {c.fixture("embedding.mpt"), c.axiom("relation-tables")});
    c.check(s_w, "w_{8n-4}(16n xi)", cohomology::sw_class(inst.bundle, inst.base - 4).to_string(),
            "0");
    c.check(s_w, "w4(16n xi)", cohomology::sw_class(inst.bundle, 4).to_string(), "0");
    c.check(s_w, "w8(16n xi)", cohomology::sw_class(inst.bundle, 8).to_string(), "0");
    c.note(s_w, "theta lifts to the first stage A_1");
    const auto ref_w = c.ref();

    auto& s_var = c.step("primary indeterminacy", {c.fixture("embedding.mpt"), ref_w});
    const std::vector<std::tuple<unsigned, const char*, std::vector<Label>>> bullets = {
        {1, "w(b-4)", labels({"k(b-3)@1"})},
        {2, "k(b-3)@1", {}},
        {2, "k(b-2)@1", labels({"k(b-2)@2"})},
        {2, "k(b-1)@1", labels({"k(b+2)@2"})},
        {3, "k(b-2)@2", {}},
        {3, "k(b-1)@2", labels({"k(b+0)@3"})},
        {3, "k(b+2)@2", {}},
    };
    std::set<Label> covered;
    for (unsigned stage = 1; stage <= 3; ++stage) {
        const auto m = mpt::variation_matrix(model, stage, n);
        for (std::size_t r = 0; r < m.rows.size(); ++r) {
            const auto it = std::find_if(bullets.begin(), bullets.end(), [&](const auto& b) {
                return std::get<0>(b) == stage && Label::parse(std::get<1>(b)) == m.rows[r];
            });
            if (it == bullets.end())
                throw VerdictMismatch("unexpected fiber " + m.rows[r].to_string());
            const auto flips = m.flips(r);
            covered.insert(flips.begin(), flips.end());
            c.check(s_var, "vary through x^" + std::to_string(m.row_dims[r]) + " (" + m.rows[r].to_string() + ")",
                    label_set(flips), label_set(std::get<2>(*it)));
        }
    }
    c.note(s_var, "classes in the indeterminacy: " + label_set({covered.begin(), covered.end()}));
    const auto ref_var = c.ref();

    auto& s_forced = c.step("forced vanishing", {c.fixture("embedding.mpt")});
    const auto forced1 = mpt::forced_vanishing(model, 1, Label::parse("k(b-1)@2"), Label::parse("k(b-2)@1"), n);
    const auto forced2 = mpt::forced_vanishing(model, 2, Label::parse("k(b+0)@3"), Label::parse("k(b-1)@2"), n);
    c.check(s_forced, "relation k(b-1)@2 forces k(b-2)@1 = 0", bool_text(forced1), "true");
    c.check(s_forced, "relation k(b+0)@3 forces k(b-1)@2 = 0", bool_text(forced2), "true");
    covered.insert(Label::parse("k(b-2)@1"));
    covered.insert(Label::parse("k(b-1)@2"));
    c.note(s_forced, "k(b-2)@1 and k(b-1)@2 pull back to zero");
    const auto ref_forced = c.ref();

    auto& s_delta = c.step("fiber-map comparison", {c.fixture("embedding.mpt"), c.fixture("charts.json"),
                                                     c.axiom("mpt-map"), c.axiom("homotopy-charts"), ref_spin});
    const auto charts = fixtures::read_json("charts.json");
    const auto pi = fixtures::homotopy_charts(charts);
    c.check(s_delta, "filtration-1 class in stem 8n-2 of pi_*(V_{8n-3,2})",
            yes_no(fixtures::find_chart(pi, "pi-V8n-3,2").dots.count({-2, 1}) > 0), "yes");
    c.check(s_delta, "filtration-1 class in stem 8n-2 of pi_*(P_{8n-5})",
            yes_no(fixtures::find_chart(pi, "pi-P8n-5").dots.count({-2, 1}) > 0), "yes");
    const auto delta = mpt::delta_through_level1_fiber(model, Label::parse("k(b-1)@1"), inst.base - 5, n);
    c.check(s_delta, "(Sq4 + w4) x^{8n-5}", delta.to_string(), "0");
    covered.insert(Label::parse("k(b-1)@1"));
    c.note(s_delta, "k(b-1)@1 pulls back to zero");
    const auto ref_delta = c.ref();

    auto& s_cov = c.step("sections-from-lifting", {c.axiom("sections-from-lifting"), ref_var, ref_forced, ref_delta});
    std::vector<Label> missing;
    for (unsigned j = 1; j < model.stage_count(); ++j)
        for (const auto& l : model.labels(j))
            if (!covered.count(l))
                missing.push_back(l);
    c.check(s_cov, "k-invariants not killed", label_set(missing), "{}");
    Statement sections = make(Kind::section_count, Status::derived, q, 2);
    sections.bundle = "theta over P^" + q.str() + " (rank " + (8 * n - 3).str() + ")";
    sections = c.conclude(s_cov, sections);
    const auto ref_cov = c.ref();

    auto& s_mah = c.step("mahowald-step", {c.axiom("mahowald-step"), c.axiom("P1-in-S1"), ref_ax, ref_cov});
    Statement circle = make(Kind::embedding, Status::axiom, 1, 1);
    circle.sphere = true;
    const auto topo = mahowald_step(base, sections, {2, 2}, circle);
    c.check(s_mah, "result", topo.text(), "P^" + (8 * n + 4).str() + " embeds in R^" + (16 * n + 1).str());
    c.conclude(s_mah, topo);
    const auto ref_mah = c.ref();

    auto& s_hae = c.step("haefliger-smoothing", {c.axiom("haefliger-smoothing"), ref_mah});
    c.check(s_hae, "2(16n+1) >= 3(8n+4)", bool_text(haefliger_ok(topo.target, topo.space)), "true");
    Statement smooth = topo;
    smooth.justification.clear();
    return c.finish(c.conclude(s_hae, smooth));
}

DerivationRecord derive(const std::string& theorem, const Natural& n)
{
    if (theorem == "thm1.1-2")
        return derive_nonimmersion_2(n);
    if (theorem == "thm1.2")
        return derive_embedding(n);
    if (theorem == "lemma3.5")
        return derive_lemma_3_5(n);
    throw DomainError("unknown theorem '" + theorem + "' (expected thm1.1-2, thm1.2 or lemma3.5)");
}

bool replay(const DerivationRecord& record)
{
    return derive(record.theorem, record.n) == record;
}

nlohmann::ordered_json to_json(const Statement& s)
{
    nlohmann::ordered_json j;
    j["kind"] = kind_name(s.kind);
    j["status"] = status_name(s.status);
    j["text"] = s.text();
    j["space"] = natural_json(s.space);
    j["target"] = natural_json(s.target);
    if (!s.bundle.empty())
        j["bundle"] = s.bundle;
    if (!s.classifier.empty())
        j["classifier"] = s.classifier;
    if (s.sphere)
        j["sphere"] = true;
    j["justification"] = s.justification;
    return j;
}

nlohmann::ordered_json to_json(const DerivationRecord& r)
{
    nlohmann::ordered_json j;
    j["theorem"] = r.theorem;
    j["n"] = natural_json(r.n);
    j["conclusion"] = to_json(r.conclusion);
    j["assumptions"] = r.assumptions;
    auto statements = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.statements.size(); ++i) {
        auto s = to_json(r.statements[i]);
        s["id"] = "S" + std::to_string(i + 1);
        statements.push_back(std::move(s));
    }
    j["statements"] = std::move(statements);
    auto steps = nlohmann::ordered_json::array();
    for (const auto& st : r.steps) {
        nlohmann::ordered_json s;
        s["rule"] = st.rule;
        s["inputs"] = st.inputs;
        auto verdicts = nlohmann::ordered_json::array();
        for (const auto& v : st.verdicts)
            verdicts.push_back({{"name", v.name}, {"value", v.value}, {"expected", v.expected}});
        s["verdicts"] = std::move(verdicts);
        s["conclusion"] = st.conclusion;
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    return j;
}

std::string transcript(const DerivationRecord& r)
{
    std::ostringstream out;
    out << r.theorem << " at n = " << r.n << "\n";
    out << "\nAssumptions:\n";
    for (const auto& a : r.assumptions)
        out << "  - " << a << "\n";
    out << "\nSteps:\n";
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const auto& s = r.steps[i];
        out << "  " << i + 1 << ". " << s.rule << "\n";
        for (const auto& in : s.inputs)
            out << "       from " << in << "\n";
        for (const auto& v : s.verdicts)
            out << "       " << v.name << " = " << v.value << "  [ok]\n";
        if (!s.conclusion.empty())
            out << "       => " << s.conclusion << "\n";
    }
    out << "\nConclusion: " << r.conclusion.text() << "\n";
    return out.str();
}

}  // namespace obstructa::derivations
