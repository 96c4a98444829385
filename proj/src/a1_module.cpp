#include "obstructa/a1.hpp"

#include "obstructa/error.hpp"

#include <algorithm>

namespace obstructa::ext {

A1Module::A1Module(std::vector<Degree> degrees, std::vector<f2::BitVector> sq1, std::vector<f2::BitVector> sq2,
                   std::vector<std::string> names)
    : degrees_(std::move(degrees)), sq1_(std::move(sq1)), sq2_(std::move(sq2)), names_(std::move(names))
{
    const std::size_t n = degrees_.size();
    if (sq1_.size() != n || sq2_.size() != n)
        throw DomainError("A(1)-module action tables must have one entry per basis element");
    if (!std::is_sorted(degrees_.begin(), degrees_.end()))
        throw DomainError("A(1)-module basis must be listed in nondecreasing degree");
    if (names_.empty())
        for (std::size_t i = 0; i < n; ++i)
            names_.push_back("e" + std::to_string(i));
    if (names_.size() != n)
        throw DomainError("A(1)-module basis names must match the basis size");

    for (std::size_t i = 0; i < n; ++i) {
        for (auto [gen, table] : {std::pair{1U, &sq1_}, std::pair{2U, &sq2_}}) {
            const auto& image = (*table)[i];
            if (image.size() != n)
                throw DomainError("A(1)-module action vector has the wrong length");
            for (auto j : image.ones())
                if (degrees_[j] != degrees_[i] + gen)
                    throw DomainError("Sq" + std::to_string(gen) + " on " + names_[i] +
                                      " leaves the expected degree");
        }
    }

    const auto& a1 = A1Algebra::get();
    for (const auto& relation : a1.word_relations())
        for (std::size_t i = 0; i < n; ++i) {
            f2::BitVector sum(n);
            for (const auto& w : relation)
                sum ^= apply_word(w, i);
            if (!sum.none()) {
                std::string text;
                for (const auto& w : relation) {
                    if (!text.empty())
                        text += " + ";
                    for (auto g : w)
                        text += "Sq" + std::to_string(g);
                }
                throw DomainError("A(1) relation " + text + " = 0 fails on " + names_[i]);
            }
        }

    for (std::size_t b = 0; b < A1Algebra::dimension; ++b) {
        action_[b].reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            action_[b].push_back(apply_word(a1.word(b), i));
    }
}

f2::BitVector A1Module::apply_word(const std::vector<unsigned>& word, std::size_t i) const
{
    const std::size_t n = degrees_.size();
    f2::BitVector v(n);
    v.set(i);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const auto& table = *it == 1 ? sq1_ : sq2_;
        f2::BitVector next(n);
        for (auto j : v.ones())
            next ^= table[j];
        v = std::move(next);
    }
    return v;
}

Degree A1Module::bottom() const
{
    if (degrees_.empty())
        throw DomainError("the zero module has no bottom degree");
    return degrees_.front();
}

Degree A1Module::top() const
{
    if (degrees_.empty())
        throw DomainError("the zero module has no top degree");
    return degrees_.back();
}

std::pair<std::size_t, std::size_t> A1Module::range(Degree t) const
{
    auto lo = std::lower_bound(degrees_.begin(), degrees_.end(), t);
    auto hi = std::upper_bound(lo, degrees_.end(), t);
    return {static_cast<std::size_t>(lo - degrees_.begin()), static_cast<std::size_t>(hi - degrees_.begin())};
}

std::size_t A1Module::dimension(Degree t) const
{
    auto [lo, hi] = range(t);
    return hi - lo;
}

f2::BitVector A1Module::act_local(std::size_t b, Degree t, const f2::BitVector& v) const
{
    const Degree target = t + A1Algebra::get().degree(b);
    auto [lo, hi] = range(t);
    auto [tlo, thi] = range(target);
    f2::BitVector out(thi - tlo);
    for (auto i : v.ones())
        for (auto j : action_[b][lo + i].ones())
            out.flip(j - tlo);
    return out;
}

A1Module stunted_module(Degree m, Degree top)
{
    if (m > top)
        throw DomainError("stunted module needs m <= top, got m = " + std::to_string(m) +
                          ", top = " + std::to_string(top));
    const std::size_t n = top - m + 1;
    std::vector<Degree> degrees;
    std::vector<f2::BitVector> sq1, sq2;
    std::vector<std::string> names;
    for (Degree j = m; j <= top; ++j) {
        degrees.push_back(j);
        names.push_back("x^" + std::to_string(j));
        f2::BitVector a(n), b(n);
        if (j + 1 <= top && dyadic::binom_mod2(j, Degree{1}))
            a.set(j + 1 - m);
        if (j + 2 <= top && dyadic::binom_mod2(j, Degree{2}))
            b.set(j + 2 - m);
        sq1.push_back(std::move(a));
        sq2.push_back(std::move(b));
    }
    return A1Module(std::move(degrees), std::move(sq1), std::move(sq2), std::move(names));
}

A1Module trivial_module(Degree d)
{
    return A1Module({d}, {f2::BitVector(1)}, {f2::BitVector(1)}, {"1"});
}

A1Module free_module(Degree d)
{
    const auto& a1 = A1Algebra::get();
    const std::size_t n = A1Algebra::dimension;
    std::vector<Degree> degrees;
    std::vector<f2::BitVector> sq1, sq2;
    std::vector<std::string> names;
    for (std::size_t b = 0; b < n; ++b) {
        degrees.push_back(d + a1.degree(b));
        names.push_back(a1.name(b));
        f2::BitVector x(n), y(n);
        for (std::size_t c = 0; c < n; ++c) {
            if (a1.product(a1.sq1(), b) >> c & 1U)
                x.set(c);
            if (a1.product(a1.sq2(), b) >> c & 1U)
                y.set(c);
        }
        sq1.push_back(std::move(x));
        sq2.push_back(std::move(y));
    }
    return A1Module(std::move(degrees), std::move(sq1), std::move(sq2), std::move(names));
}

}  // namespace obstructa::ext
