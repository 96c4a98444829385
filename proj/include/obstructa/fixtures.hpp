#pragma once

// Data files shipped with the library: relation tables, transcribed charts and
// the axiom registry. The directory is $OBSTRUCTA_FIXTURES when set, otherwise
// the one compiled in.

#include "obstructa/expr.hpp"
#include "obstructa/mpt.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace obstructa::fixtures {

std::filesystem::path directory();
// Throws Error when the file is missing; ParseError for malformed JSON.
std::string read_text(const std::string& name);
nlohmann::json read_json(const std::string& name);
mpt::MptModel read_model(const std::string& name);

// "ax-" followed by 16 hex digits of FNV-1a over the compact, key-sorted JSON
// of `entry` with any "id" member removed.
std::string content_id(const nlohmann::json& entry);

struct Axiom {
    std::string id;
    std::string name;
    std::string kind;  // statement, rule or assumption
    std::string text;
};

class AxiomRegistry {
public:
    static AxiomRegistry load();
    static AxiomRegistry from_json(const nlohmann::json& j);

    int version() const noexcept { return version_; }
    const std::vector<Axiom>& all() const noexcept { return axioms_; }
    // Throws Error for unknown names.
    const Axiom& get(const std::string& name) const;
    // Names whose stored id differs from the recomputed content id.
    const std::vector<std::string>& stale_ids() const noexcept { return stale_; }

private:
    int version_ = 0;
    std::vector<Axiom> axioms_;
    std::vector<std::string> stale_;
};

using DotMap = std::map<std::pair<long long, std::size_t>, std::size_t>;

struct ChartFixture {
    std::string id;
    AffineExpr bottom;
    AffineExpr origin;
    long long stem_lo = 0;
    long long stem_hi = 0;
    DotMap dots;  // relative stems
    std::vector<long long> towers;
    std::string ko_panel;
};

std::vector<ChartFixture> ko_panels(const nlohmann::json& charts);
std::vector<ChartFixture> homotopy_charts(const nlohmann::json& charts);
const ChartFixture& find_chart(const std::vector<ChartFixture>& charts, const std::string& id);

// Differences between a ko panel and the chart computed by minimal resolution
// at n, restricted to the panel's stem window. Empty means dot-for-dot equal.
// In a tower stem only the drawn filtrations are compared, and the computed
// chart must report a tower there.
std::vector<std::string> compare_ko_panel(const ChartFixture& panel, const dyadic::Natural& n);

// Multiset difference homotopy - ko at filtrations <= max_filtration, as the
// sorted list of relative stems (with repeats). Under a surjective,
// filtration-preserving map these are the kernel classes.
std::vector<long long> kernel_stems(const ChartFixture& homotopy, const ChartFixture& ko,
                                    std::size_t max_filtration);

// Compares the classes of each tower stage with the chart dots in the matching
// filtration: a stage-j class of degree b+d corresponds to a dot at relative
// stem d-1 in filtration j. Empty means they agree.
std::vector<std::string> compare_tower_with_chart(const mpt::MptModel& model, const ChartFixture& chart);

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
};

// Re-checks every fixture against an engine recomputation where one exists.
std::vector<Check> verify_all(const dyadic::Natural& n_alpha2 = 3, const dyadic::Natural& n_alpha3 = 7);

}  // namespace obstructa::fixtures
