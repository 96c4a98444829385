#pragma once

// Modified Postnikov towers given by their k-invariant relations. A model is a
// list of stages: stage 0 holds the Stiefel-Whitney classes being lifted and
// stage j >= 1 holds k-invariants, each defined by a relation sum_t c_t op_t s_t
// in which s_t is a class of stage j-1. Degrees are written relative to a
// symbolic base b = coef*n + offset and instantiated at a concrete n.

#include "obstructa/cohomology.hpp"
#include "obstructa/expr.hpp"
#include "obstructa/f2.hpp"

#include "json.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace obstructa::mpt {

using cohomology::CohomologyClass;
using cohomology::Degree;
using cohomology::SteenrodWord;
using dyadic::Natural;

// w(b+2) is {0, false, 2}; k'(b+9)@1 is {1, true, 9}.
struct Label {
    unsigned stage = 0;
    bool primed = false;
    std::int64_t offset = 0;

    auto operator<=>(const Label&) const = default;

    // "w(b+2)", "k(b+3)@1", "k'(b-4)@2".
    std::string to_string() const;
    // Inverse of to_string. Throws DomainError.
    static Label parse(std::string_view text);
};

// Bundle classes that may multiply a term.
enum class Coefficient { one, w4, w8, w4w4 };

Degree coefficient_degree(Coefficient c);
std::string_view coefficient_name(Coefficient c);

struct Term {
    Coefficient coef = Coefficient::one;
    SteenrodWord word;
    Label source;

    auto operator<=>(const Term&) const = default;
    std::string to_string() const;
};

struct KInvariant {
    Label label;
    // Reduced mod 2: no term appears twice.
    std::vector<Term> relation;

    bool operator==(const KInvariant&) const = default;
};

struct Stage {
    std::vector<Label> classes;  // stage 0 only
    std::vector<KInvariant> k_invariants;

    bool operator==(const Stage&) const = default;
};

// Concrete degrees at one value of n.
struct Instance {
    Natural n;
    Degree base = 0;
    Degree space_dim = 0;
    cohomology::BundleData bundle;

    Degree degree(const Label& l) const;
    CohomologyClass coefficient(Coefficient c) const;
};

struct MptModel {
    AffineExpr base;
    AffineExpr bundle;
    AffineExpr space;
    // stages[0] is the stage of w-classes.
    std::vector<Stage> stages;

    bool operator==(const MptModel&) const = default;

    std::size_t stage_count() const noexcept { return stages.size(); }
    // Labels of stage j in file order (w-classes for j = 0).
    std::vector<Label> labels(unsigned stage) const;
    bool has(const Label& l) const;
    // Throws DomainError for unknown labels or stage-0 labels.
    const KInvariant& find(const Label& l) const;

    // Evaluates all expressions at n and checks every degree lies in
    // [1, space + 3]. Throws DomainError.
    Instance instantiate(const Natural& n) const;
};

// Throws ParseError (with a line number) on malformed or inconsistent input.
MptModel parse_relations(std::string_view text);
// Normalized text form; parse_relations(print_relations(m)) == m.
std::string print_relations(const MptModel& model);

// Sum over the terms of `k` whose source is `source` of coef * op(input).
CohomologyClass evaluate_relation(const KInvariant& k, const Label& source, const CohomologyClass& input,
                                  const Instance& inst);

struct Delta {
    Label k_invariant;
    CohomologyClass change;
};

// Change of each stage-`stage` k-invariant pullback when the lifting is varied
// through x^d, d = deg(fiber) - 1, on the fiber factor dual to `fiber`.
std::vector<Delta> variation_delta(const MptModel& model, unsigned stage, const Label& fiber, const Instance& inst);
std::vector<Delta> variation_delta(const MptModel& model, unsigned stage, const Label& fiber, const Natural& n);

struct VariationMatrix {
    unsigned stage = 0;
    std::vector<Label> rows;      // fibers (stage - 1 classes)
    std::vector<Degree> row_dims;  // fiber dimension deg - 1
    std::vector<Label> columns;   // stage k-invariants
    std::vector<f2::BitVector> entries;

    std::optional<std::size_t> column_index(const Label& l) const;
    std::vector<Label> flips(std::size_t row) const;
};

VariationMatrix variation_matrix(const MptModel& model, unsigned stage, const Natural& n);
// Builds a matrix directly; used for hand-made inputs.
VariationMatrix make_matrix(std::vector<Label> rows, std::vector<Label> columns,
                            const std::vector<std::vector<Label>>& flips);

// Every F2 combination of rows flipping all of `antecedent` also flips some
// label of `consequent`. Throws DomainError for unknown labels or an empty
// antecedent.
bool check_implication(const VariationMatrix& m, const std::set<Label>& antecedent,
                       const std::set<Label>& consequent);

// No nonzero combination of rows is zero.
bool kernel_trivial(const VariationMatrix& m);

// The relation for `relation_label` (stage `stage` + 1) applied to the only
// possible nonzero value x^{deg(candidate)} of the candidate pullback: true when
// that is nonzero, so the pullback must vanish.
bool forced_vanishing(const MptModel& model, unsigned stage, const Label& relation_label, const Label& candidate,
                      const Natural& n);

// {d + 1 : d in fiber_degrees} restricted to multiples of 4 up to 4 * hp_dim,
// each shifted by `shift` before the test.
std::set<Natural> quaternionic_pullback_check(const std::set<Natural>& fiber_degrees, const Natural& hp_dim,
                                              const Natural& shift = 0);

// A stage-1 relation evaluated on x^{fiber_dim} through the w-class of degree
// fiber_dim + 1, with w-coefficients from the model bundle or `bundle_multiple`.
CohomologyClass delta_through_level1_fiber(const MptModel& model, const Label& relation_label, Degree fiber_dim,
                                           const Natural& n,
                                           const std::optional<Natural>& bundle_multiple = std::nullopt);

nlohmann::json to_json(const VariationMatrix& m);
nlohmann::json to_json(const std::vector<Delta>& deltas);

}  // namespace obstructa::mpt
