#pragma once

// Theorem reproductions as chains of checked steps. Each step records the rule
// it applies, the statements, axioms and fixtures it consumes, and the verdicts
// it computed together with the value the chain needs. A verdict that differs
// from the needed value aborts the derivation with VerdictMismatch.

#include "obstructa/dyadic.hpp"
#include "obstructa/fixtures.hpp"

#include "json.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace obstructa::derivations {

using dyadic::Natural;

enum class Kind { immersion, no_immersion, embedding, section_count, lifting, no_lifting };
enum class Status { axiom, derived, refuted };

std::string_view kind_name(Kind k);
std::string_view status_name(Status s);

struct Statement {
    Kind kind = Kind::embedding;
    Status status = Status::derived;
    Natural space;           // dimension of the projective space (or sphere source)
    Natural target;          // ambient dimension, BO rank, or section count
    std::string bundle;      // lifting and section-count statements
    std::string classifier;  // lifting statements: "BO(49)"
    bool sphere = false;     // embedding into S^target rather than R^target
    std::vector<std::string> justification;

    bool operator==(const Statement&) const = default;
    // "P^58 does not immerse in R^107", "P^60 embeds in R^113", ...
    std::string text() const;
};

// (n+k+1)xi over P^n factors through BO(k); equivalent to P^n immersing in R^{n+k}.
Statement sanderson_reduce(const Natural& n, const Natural& k);

// Given P^q in R^p (the premise, which must be an embedding statement), the
// bundle nu (x) xi_q is stably (p+1)xi_q of rank p - q.
struct NormalTwist {
    Natural stable_multiple;  // p + 1
    Natural rank;             // p - q
    Statement statement;      // section-count-free description of theta
};
NormalTwist normal_twist_identity(const Statement& embedding);
NormalTwist normal_twist_identity(const Natural& p, const Natural& q);

// P^q in R^p, s sections of nu (x) xi_q and P^{s-1} in S^{m-1} give P^{s+q} in
// R^{p+m}. sphere = (s, m). Throws VerdictMismatch naming a missing premise.
Statement mahowald_step(const Statement& embed, const Statement& sections, std::pair<Natural, Natural> sphere,
                        const std::optional<Statement>& sphere_embedding);

// 2 * ambient >= 3 * manifold.
bool haefliger_ok(const Natural& ambient, const Natural& manifold);

struct Verdict {
    std::string name;
    std::string value;
    std::string expected;
    bool operator==(const Verdict&) const = default;
};

struct Step {
    std::string rule;
    std::vector<std::string> inputs;
    std::vector<Verdict> verdicts;
    std::string conclusion;
    bool operator==(const Step&) const = default;
};

struct DerivationRecord {
    std::string theorem;  // "thm1.1-2", "thm1.2", "lemma3.5"
    Natural n;
    Statement conclusion;
    std::vector<Step> steps;
    std::vector<std::string> assumptions;  // axiom ids and fixture files consumed
    std::vector<Statement> statements;     // ledger snapshot in order of derivation

    bool operator==(const DerivationRecord&) const = default;
};

// Append-only statement store. Derived statements must carry a justification.
class Ledger {
public:
    // Returns the new statement's id ("S1", "S2", ...).
    std::string append(Statement s);
    std::vector<Statement> snapshot() const;
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::vector<Statement> entries_;
};

// Throw DomainError when the alpha(n) gate fails and VerdictMismatch when any
// sub-verdict deviates.
DerivationRecord derive_nonimmersion_2(const Natural& n);
DerivationRecord derive_embedding(const Natural& n);
DerivationRecord derive_lemma_3_5(const Natural& n);

// Dispatches on the theorem names above.
DerivationRecord derive(const std::string& theorem, const Natural& n);
// Re-runs the derivation named by the record and compares everything.
bool replay(const DerivationRecord& record);

nlohmann::ordered_json to_json(const DerivationRecord& r);
nlohmann::ordered_json to_json(const Statement& s);
// Plain-text transcript; its last line is "Conclusion: <statement>".
std::string transcript(const DerivationRecord& r);

}  // namespace obstructa::derivations
