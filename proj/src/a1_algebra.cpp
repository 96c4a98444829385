#include "obstructa/a1.hpp"

#include "obstructa/error.hpp"

#include <optional>
#include <stdexcept>

namespace obstructa::ext {

namespace {

// Mask over `candidates` whose admissible expansions sum to `target`, if any.
std::optional<std::uint8_t> express(const adem::Element& target, const std::vector<std::size_t>& candidates,
                                    const std::array<adem::Element, A1Algebra::dimension>& expansions)
{
    const std::size_t k = candidates.size();
    for (std::size_t subset = 0; subset < (std::size_t{1} << k); ++subset) {
        adem::Element sum;
        std::uint8_t mask = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (subset >> i & 1U) {
                adem::add_into(sum, expansions[candidates[i]]);
                mask |= static_cast<std::uint8_t>(1U << candidates[i]);
            }
        if (sum == target)
            return mask;
    }
    return std::nullopt;
}

}  // namespace

const A1Algebra& A1Algebra::get()
{
    static const A1Algebra algebra;
    return algebra;
}

A1Algebra::A1Algebra()
{
    // Span of all composites of Sq1 and Sq2, degree by degree. Each new basis
    // element is g * e for a generator g and an earlier basis element e.
    std::size_t count = 0;
    degree_[0] = 0;
    admissible_[0] = adem::Element{adem::Monomial{}};
    by_degree_.assign(top_degree + 2, {});
    by_degree_[0].push_back(0);
    count = 1;

    for (unsigned d = 1; d <= top_degree + 1; ++d) {
        for (unsigned g : {1U, 2U}) {
            if (g > d)
                continue;
            for (auto e : std::vector<std::size_t>(by_degree_[d - g])) {
                auto value = adem::multiply(adem::Element{adem::Monomial{g}}, admissible_[e]);
                if (value.empty() || express(value, by_degree_[d], admissible_))
                    continue;
                if (count == dimension)
                    throw std::logic_error("A(1) span exceeds dimension 8");
                degree_[count] = d;
                admissible_[count] = value;
                word_[count] = {g};
                word_[count].insert(word_[count].end(), word_[e].begin(), word_[e].end());
                by_degree_[d].push_back(count);
                ++count;
            }
        }
    }
    if (count != dimension || !by_degree_[top_degree + 1].empty())
        throw std::logic_error("A(1) derived from the Adem relations does not have dimension 8");
    by_degree_.pop_back();

    sq1_ = by_degree_[1].at(0);
    sq2_ = by_degree_[2].at(0);

    for (std::size_t a = 0; a < dimension; ++a)
        for (std::size_t b = 0; b < dimension; ++b) {
            const auto value = adem::multiply(admissible_[a], admissible_[b]);
            const unsigned d = degree_[a] + degree_[b];
            if (d > top_degree) {
                if (!value.empty())
                    throw std::logic_error("A(1) is not closed under multiplication");
                product_[a][b] = 0;
                continue;
            }
            auto mask = express(value, by_degree_[d], admissible_);
            if (!mask)
                throw std::logic_error("A(1) is not closed under multiplication");
            product_[a][b] = *mask;
        }

    // Relations among generator words of degree <= top + 1.
    std::vector<std::vector<std::vector<unsigned>>> words_by_degree(top_degree + 2);
    words_by_degree[0].push_back({});
    for (unsigned d = 1; d <= top_degree + 1; ++d)
        for (unsigned g : {1U, 2U})
            if (g <= d)
                for (const auto& w : words_by_degree[d - g]) {
                    std::vector<unsigned> next{g};
                    next.insert(next.end(), w.begin(), w.end());
                    words_by_degree[d].push_back(std::move(next));
                }
    for (unsigned d = 1; d <= top_degree + 1; ++d) {
        const auto& words = words_by_degree[d];
        std::vector<f2::BitVector> values;
        for (const auto& w : words) {
            f2::BitVector v(dimension);
            const auto mask = evaluate_word(w);
            for (std::size_t b = 0; b < dimension; ++b)
                if (mask >> b & 1U)
                    v.set(b);
            values.push_back(std::move(v));
        }
        for (const auto& k : f2::left_kernel(values, dimension)) {
            std::vector<std::vector<unsigned>> relation;
            for (auto i : k.ones())
                relation.push_back(words[i]);
            relations_.push_back(std::move(relation));
        }
    }
}

std::uint8_t A1Algebra::left_multiply(std::size_t a, std::uint8_t mask) const
{
    std::uint8_t out = 0;
    for (std::size_t b = 0; b < dimension; ++b)
        if (mask >> b & 1U)
            out ^= product_[a][b];
    return out;
}

const std::vector<std::size_t>& A1Algebra::in_degree(unsigned d) const
{
    static const std::vector<std::size_t> empty;
    return d < by_degree_.size() ? by_degree_[d] : empty;
}

std::uint8_t A1Algebra::evaluate_word(const std::vector<unsigned>& word) const
{
    std::uint8_t value = 1U << unit;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it != 1 && *it != 2)
            throw DomainError("A(1) words use only the generators Sq1 and Sq2");
        value = left_multiply(*it == 1 ? sq1_ : sq2_, value);
    }
    return value;
}

std::vector<unsigned> A1Algebra::poincare_series() const
{
    std::vector<unsigned> out(top_degree + 1, 0);
    for (auto d : degree_)
        ++out[d];
    return out;
}

}  // namespace obstructa::ext
