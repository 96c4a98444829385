#pragma once

// Minimal free resolutions over A(1), Adams charts read off from them, and the
// ko-homology orders of stunted projective spectra.

#include "obstructa/a1.hpp"
#include "obstructa/dyadic.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace obstructa::ext {

// Free A(1)-module on generators listed in nondecreasing degree. In degree t
// the basis is the pairs (generator g, A(1) basis element b) with
// deg g + deg b = t, ordered by generator then by b.
class FreeModule {
public:
    std::size_t add_generator(Degree d);
    std::size_t generator_count() const noexcept { return degrees_.size(); }
    Degree generator_degree(std::size_t g) const { return degrees_[g]; }

    struct Entry {
        std::size_t generator;
        std::size_t element;  // A(1) basis index
    };
    // Basis of degree t.
    std::vector<Entry> basis(Degree t) const;
    std::size_t dimension(Degree t) const;
    // Position of (g, b) in basis(deg g + deg b).
    std::size_t index(std::size_t g, std::size_t b) const;

    // a * v for an A(1) basis element a and v of degree t.
    f2::BitVector act(std::size_t a, Degree t, const f2::BitVector& v) const;

private:
    // Generators with degree in [t - 6, t].
    std::pair<std::size_t, std::size_t> window(Degree t) const;

    std::vector<Degree> degrees_;
};

// One filtration of a resolution: the free module F_s and d(g) for each of its
// generators, expressed in the degree-(deg g) basis of F_{s-1} (or of M for s = 0).
struct ResolutionStage {
    FreeModule module;
    std::vector<f2::BitVector> boundary;
};

class Resolution {
public:
    Resolution(A1Module module, std::size_t s_max, Degree t_max);

    const A1Module& module() const noexcept { return module_; }
    std::size_t s_max() const noexcept { return s_max_; }
    Degree t_max() const noexcept { return t_max_; }
    const std::vector<ResolutionStage>& stages() const noexcept { return stages_; }

    // Number of generators of F_s in degree t, which is dim Ext^{s,t}.
    std::size_t ext_dimension(std::size_t s, Degree t) const;

    // Rows of d_s in degree t: one row per basis element of F_s[t], columns the
    // basis of F_{s-1}[t] (or M[t]).
    std::vector<f2::BitVector> boundary_matrix(std::size_t s, Degree t) const;
    std::size_t target_dimension(std::size_t s, Degree t) const;

private:
    friend Resolution minimal_resolution(const A1Module&, std::size_t, Degree);
    f2::BitVector apply_boundary(std::size_t s, std::size_t g, std::size_t b) const;

    A1Module module_;
    std::size_t s_max_;
    Degree t_max_;
    std::vector<ResolutionStage> stages_;
};

// Minimal free resolution of M through filtration s_max and internal degree
// t_max. Generators are added degree by degree as a complement of the image in
// the kernel of the previous boundary, so no boundary has a unit coefficient.
// Throws WindowError when t_max lies below the bottom of M.
Resolution minimal_resolution(const A1Module& M, std::size_t s_max, Degree t_max);

// Adams chart of Ext_{A(1)}. Dots at (stem, filtration) = (t - s, s) are
// numbered within their bidegree in generator order.
struct ChartDot {
    long long stem;
    std::size_t filtration;
    std::size_t index;
    auto operator<=>(const ChartDot&) const = default;
};

struct ChartLine {
    ChartDot from;
    ChartDot to;
    auto operator<=>(const ChartLine&) const = default;
};

struct ExtChart {
    // (stem, filtration) -> multiplicity
    std::map<std::pair<long long, std::size_t>, std::size_t> dots;
    std::vector<ChartLine> h0;  // (d, s) -> (d, s + 1)
    std::vector<ChartLine> h1;  // (d, s) -> (d + 1, s + 1)
    std::vector<long long> towers;
    std::size_t s_max = 0;
    long long stem_min = 0;
    long long stem_max = 0;  // largest stem fully computed at every filtration <= s_max

    std::size_t multiplicity(long long stem, std::size_t s) const;
    std::size_t dots_in_stem(long long stem) const;
    bool has_tower(long long stem) const;
};

// Lines come from boundary coefficients equal to Sq1 (h0) or Sq2 (h1). A stem
// carries a tower when its dot at s_max is joined by h0 to the dot below.
ExtChart ext_chart(const Resolution& r);

// {"dots": [[stem, s, mult]], "h0": [[stem, s, i, j]], "h1": [[stem, s, i, j]],
//  "towers": [stem], "s_max": n, "stem_range": [lo, hi]}
// An h0 entry joins dot i at (stem, s) to dot j at (stem, s+1); an h1 entry
// joins dot i at (stem, s) to dot j at (stem+1, s+1).
nlohmann::json chart_to_json(const ExtChart& c);
ExtChart chart_from_json(const nlohmann::json& j);

// Window used to answer a query in stem D for P_m.
struct KoWindow {
    std::size_t s_max;
    Degree top;
    Degree t_max;
};
KoWindow ko_window(Degree stem, Degree m, Degree extra_top = 0);

struct KoOrder {
    unsigned nu;  // exponent of 2 in |ko_{4i-1}(P_m)|
    KoWindow window;
};

// nu(|ko_{4i-1}(P_m)|) as the number of chart dots in stem 4i - 1, assuming the
// Adams spectral sequence collapses with extensions given by h0. Stems below
// the bottom cell give 0. Throws DomainError for stems carrying an integer tower and
// WindowError when the dots in the stem reach the filtration ceiling.
KoOrder ko_order_detail(const dyadic::Natural& i, const dyadic::Natural& m, Degree extra_top = 0);
dyadic::Natural ko_order(const dyadic::Natural& i, const dyadic::Natural& m);

// Chart of P_m over stems [m, stem_hi] with the same window policy.
ExtChart stunted_chart(Degree m, Degree stem_hi);

}  // namespace obstructa::ext
