#include "doctest.h"

#include "obstructa/error.hpp"
#include "obstructa/fixtures.hpp"
#include "obstructa/mpt.hpp"

#include <map>
#include <string>

using namespace obstructa;
using namespace obstructa::mpt;

namespace {

const std::string header = "base 16n+0\nbundle 32n+12\nspace 16n+10\n\nstage 0\nw(b+2)\nw(b+4)\n\nstage 1\n";

Label L(const char* text)
{
    return Label::parse(text);
}

std::set<Label> S(std::initializer_list<const char*> texts)
{
    std::set<Label> out;
    for (auto t : texts)
        out.insert(L(t));
    return out;
}

std::set<Label> flips(const VariationMatrix& m, const char* row)
{
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        if (m.rows[r] == L(row)) {
            const auto v = m.flips(r);
            return {v.begin(), v.end()};
        }
    FAIL("no row " << row);
    return {};
}

}  // namespace

TEST_SUITE("mpt")
{
    TEST_CASE("labels")
    {
        CHECK(L("w(b+2)") == Label{0, false, 2});
        CHECK(L("k'(b+9)@1") == Label{1, true, 9});
        CHECK(L("k(b-4)@2") == Label{2, false, -4});
        CHECK(L("k(b+0)@3").to_string() == "k(b+0)@3");
        CHECK_THROWS_AS(L("k(b+3)"), DomainError);
        CHECK_THROWS_AS(L("w(16n+2)"), DomainError);
    }

    TEST_CASE("shipped relation tables")
    {
        const auto a = fixtures::read_model("nonimmersion.mpt");
        REQUIRE(a.stage_count() == 5);
        CHECK(a.labels(0).size() == 3);
        CHECK(a.labels(1).size() == 7);
        CHECK(a.labels(2).size() == 6);
        CHECK(a.labels(3).size() == 2);
        CHECK(a.labels(4).size() == 1);
        const auto b = fixtures::read_model("embedding.mpt");
        REQUIRE(b.stage_count() == 4);
        CHECK(b.labels(0).size() == 1);
        CHECK(b.labels(1).size() == 3);
        CHECK(b.labels(2).size() == 3);
        CHECK(b.labels(3).size() == 1);
    }

    TEST_CASE("printing round-trips")
    {
        for (const auto* file : {"nonimmersion.mpt", "embedding.mpt"}) {
            const auto m = fixtures::read_model(file);
            const auto text = print_relations(m);
            CHECK(parse_relations(text) == m);
            CHECK(print_relations(parse_relations(text)) == text);
        }
    }

    TEST_CASE("parentheses distribute and duplicate terms cancel")
    {
        const auto m = parse_relations(header + "k(b+5) = (Sq4 + w4) w(b+2)\nk(b+3) = Sq2 w(b+2) + Sq2 w(b+2)\n"
                                                "k(b+4) = (Sq2 + Sq2) Sq1 w(b+2) + Sq1 w(b+4)\n");
        CHECK(m.find(L("k(b+5)@1")).relation.size() == 2);
        CHECK(m.find(L("k(b+3)@1")).relation.empty());
        REQUIRE(m.find(L("k(b+4)@1")).relation.size() == 1);
        CHECK(m.find(L("k(b+4)@1")).relation[0].source == L("w(b+4)"));
    }

    TEST_CASE("parse errors carry line numbers")
    {
        const auto error_line = [](const std::string& text) -> std::size_t {
            try {
                parse_relations(text);
            } catch (const ParseError& e) {
                return e.line();
            }
            return 0;
        };
        // Sq2 w(b+2) has degree b+4; k(b+5) needs b+6
        CHECK(error_line(header + "k(b+5) = Sq2 w(b+2)\n") == 10);
        CHECK(error_line(header + "k(b+3) = Sq2 w(b+3)\n") == 10);
        CHECK(error_line(header + "k(b+3) = Sq2 w(b+2)\nk(b+3) = Sq2 w(b+2)\n") == 11);
        CHECK(error_line(header + "k(b+3) = Sq2 w4 w(b+2)\n") == 10);
        CHECK(error_line(header + "k(b+3) = (Sq2 w(b+2)\n") == 10);
        CHECK(error_line(header + "k(b+3) = Sq2 k(b+3)@1\n") == 10);
        CHECK(error_line(header + "k(b+3) = Sq2 w(b+2)\n\nstage 3\nk(b+9) = Sq2 k(b+3)@1\n") == 12);
        CHECK(error_line("bundle 32n+12\nspace 16n+10\n\nstage 0\nw(b+2)\n") != 0);
        CHECK(error_line(header + "k(b+3) = Sq2 w(b+2) junk\n") == 10);
        CHECK_NOTHROW(parse_relations(header + "k(b+3) = Sq2 w(b+2)\nk(b+9) = 0\n"));
    }

    TEST_CASE("instantiation checks degrees")
    {
        const auto m = parse_relations(header + "k(b+3) = Sq2 w(b+2)\n");
        const auto inst = m.instantiate(3);
        CHECK(inst.base == 48);
        CHECK(inst.space_dim == 58);
        CHECK(inst.degree(L("k(b+3)@1")) == 51);
        CHECK_THROWS_WITH_AS(inst.degree(L("k(b+20)@1")), doctest::Contains("degree overflow"), DomainError);
    }

    TEST_CASE("action map evaluation through K_{16n+2}")
    {
        const auto m = fixtures::read_model("nonimmersion.mpt");
        std::map<std::string, std::string> got;
        for (const auto& d : variation_delta(m, 2, L("k(b+3)@1"), 3))
            got[d.k_invariant.to_string()] = d.change.to_string();
        CHECK(got["k'(b+8)@2"] == "x^56");
        CHECK(got["k(b+4)@2"] == "x^52");
        CHECK(got["k(b+8)@2"] == "0");
        CHECK(got["k(b+10)@2"] == "0");
        CHECK(got["k'(b+10)@2"] == "0");
        // varying through K_{16n+4}: the Sq4 and w4 terms cancel
        for (const auto& d : variation_delta(m, 2, L("k(b+5)@1"), 3))
            CHECK(d.change.is_zero());
        CHECK_THROWS_AS(variation_delta(m, 2, L("w(b+2)"), 3), DomainError);
        CHECK_THROWS_AS(variation_delta(m, 7, L("k(b+3)@1"), 3), DomainError);
    }

    TEST_CASE("variation matrices are stable in n")
    {
        const auto m = fixtures::read_model("nonimmersion.mpt");
        for (int n : {3, 5, 6, 9, 10, 12}) {
            CAPTURE(n);
            const auto two = variation_matrix(m, 2, n);
            CHECK(two.rows.size() == 7);
            CHECK(flips(two, "k(b+3)@1") == S({"k(b+4)@2", "k'(b+8)@2"}));
            CHECK(flips(two, "k(b+4)@1") == S({"k(b+4)@2", "k(b+8)@2", "k(b+9)@2", "k'(b+10)@2"}));
            CHECK(flips(two, "k(b+8)@1") == S({"k(b+8)@2", "k(b+10)@2"}));
            for (const char* empty : {"k(b+5)@1", "k(b+7)@1", "k(b+9)@1", "k'(b+9)@1"})
                CHECK(flips(two, empty).empty());
            const auto one = variation_matrix(m, 1, n);
            CHECK(flips(one, "w(b+2)") == S({"k(b+4)@1", "k(b+5)@1", "k'(b+9)@1"}));
            CHECK(flips(one, "w(b+4)") == S({"k(b+4)@1", "k(b+7)@1", "k(b+8)@1", "k'(b+9)@1"}));
            CHECK(flips(one, "w(b+8)") == S({"k(b+8)@1", "k(b+9)@1"}));
            CHECK(kernel_trivial(one));
            CHECK(check_implication(two, S({"k(b+4)@2", "k(b+8)@2"}), S({"k(b+10)@2", "k'(b+10)@2"})));
        }
        const auto e = fixtures::read_model("embedding.mpt");
        for (int n : {7, 11, 13, 14}) {
            CAPTURE(n);
            CHECK(flips(variation_matrix(e, 1, n), "w(b-4)") == S({"k(b-3)@1"}));
            CHECK(flips(variation_matrix(e, 2, n), "k(b-2)@1") == S({"k(b-2)@2"}));
            CHECK(flips(variation_matrix(e, 2, n), "k(b-1)@1") == S({"k(b+2)@2"}));
            CHECK(flips(variation_matrix(e, 3, n), "k(b-1)@2") == S({"k(b+0)@3"}));
        }
    }

    TEST_CASE("implication over F2 combinations")
    {
        const auto m = variation_matrix(fixtures::read_model("nonimmersion.mpt"), 2, 3);
        CHECK_FALSE(check_implication(m, S({"k(b+4)@2"}), S({"k(b+10)@2", "k'(b+10)@2"})));
        CHECK(check_implication(m, S({"k(b+9)@2"}), S({"k(b+9)@2"})));
        CHECK_THROWS_AS(check_implication(m, {}, S({"k(b+9)@2"})), DomainError);
        CHECK_THROWS_AS(check_implication(m, S({"k(b+99)@2"}), S({"k(b+9)@2"})), DomainError);
    }

    TEST_CASE("kernel of hand-made matrices")
    {
        const std::vector<Label> cols{L("k(b+1)@1"), L("k(b+2)@1")};
        CHECK(kernel_trivial(make_matrix({L("w(b+0)"), L("w(b+1)")}, cols, {{cols[0]}, {cols[1]}})));
        CHECK_FALSE(kernel_trivial(make_matrix({L("w(b+0)"), L("w(b+1)")}, cols, {{cols[0]}, {cols[0]}})));
        CHECK_FALSE(kernel_trivial(make_matrix({L("w(b+0)")}, cols, {{}})));
        CHECK_THROWS_AS(make_matrix({L("w(b+0)")}, cols, {{L("k(b+7)@1")}}), DomainError);
    }

    TEST_CASE("forced vanishing")
    {
        const auto e = fixtures::read_model("embedding.mpt");
        for (int n : {7, 11}) {
            CHECK(forced_vanishing(e, 1, L("k(b-1)@2"), L("k(b-2)@1"), n));
            CHECK(forced_vanishing(e, 2, L("k(b+0)@3"), L("k(b-1)@2"), n));
        }
        // Sq1 kills the even class x^{8n-2}
        CHECK_FALSE(forced_vanishing(e, 1, L("k(b-2)@2"), L("k(b-2)@1"), 7));
        CHECK_THROWS_AS(forced_vanishing(e, 1, L("k(b+0)@3"), L("k(b-2)@1"), 7), DomainError);
        CHECK_THROWS_AS(forced_vanishing(e, 1, L("k(b-1)@2"), L("k(b-3)@1"), 7), DomainError);
    }

    TEST_CASE("quaternionic pullback")
    {
        CHECK(quaternionic_pullback_check({4, 6, 8}, 4 * 3 + 2, 48).empty());
        CHECK(quaternionic_pullback_check({11}, 3) == std::set<Natural>{12});
        CHECK(quaternionic_pullback_check({11}, 2).empty());
        CHECK(quaternionic_pullback_check({54, 56, 57}, 4 * 7).empty());
        CHECK_THROWS_AS(quaternionic_pullback_check({-2}, 4), DomainError);
    }

    TEST_CASE("delta through the level-1 fiber")
    {
        const auto e = fixtures::read_model("embedding.mpt");
        CHECK(delta_through_level1_fiber(e, L("k(b-1)@1"), 51, 7).is_zero());
        CHECK(delta_through_level1_fiber(e, L("k(b-1)@1"), 51, 7, Natural(20)) ==
              CohomologyClass::monomial(58, 55));
        CHECK(delta_through_level1_fiber(e, L("k(b-3)@1"), 51, 7) == CohomologyClass::monomial(58, 53));
        CHECK_THROWS_AS(delta_through_level1_fiber(e, L("k(b-1)@1"), 50, 7), DomainError);
        CHECK_THROWS_AS(delta_through_level1_fiber(e, L("k(b-1)@2"), 51, 7), DomainError);
    }

    TEST_CASE("json export")
    {
        const auto j = to_json(variation_matrix(fixtures::read_model("nonimmersion.mpt"), 1, 3));
        CHECK(j.at("kernel_trivial") == true);
        CHECK(j.at("rows").size() == 3);
        CHECK(j.at("rows")[0].at("fiber") == "w(b+2)");
        CHECK(j.at("rows")[0].at("fiber_dim") == 49);
    }
}
