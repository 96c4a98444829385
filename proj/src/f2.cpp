#include "obstructa/f2.hpp"

#include <bit>
#include <cassert>

namespace obstructa::f2 {

BitVector& BitVector::operator^=(const BitVector& other)
{
    assert(other.size_ == size_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] ^= other.words_[w];
    return *this;
}

bool BitVector::none() const noexcept
{
    for (auto w : words_)
        if (w)
            return false;
    return true;
}

std::size_t BitVector::count() const noexcept
{
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::optional<std::size_t> BitVector::first() const noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w])
            return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
}

std::vector<std::size_t> BitVector::ones() const
{
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        auto bits = words_[w];
        while (bits) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

void BitVector::resize(std::size_t size)
{
    assert(size >= size_);
    size_ = size;
    words_.resize((size + 63) / 64, 0);
}

void Echelon::reduce(BitVector& v) const
{
    assert(v.size() == dimension_);
    if (rows_.empty())
        return;
    // Rows are reduced against each other, so a single pass over v's bits in
    // increasing order suffices: clearing pivot p only touches bits above p.
    auto words = v.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            const std::size_t col = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            if (col < pivot_row_.size() && pivot_row_[col] >= 0 && v.test(col)) {
                v ^= rows_[static_cast<std::size_t>(pivot_row_[col])];
                bits = words[w] & ~((std::uint64_t{2} << (col & 63)) - 1);
            }
        }
    }
}

bool Echelon::insert(BitVector v)
{
    reduce(v);
    const auto pivot = v.first();
    if (!pivot)
        return false;
    if (pivot_row_.empty())
        pivot_row_.assign(dimension_, -1);
    // Keep the basis fully reduced: clear the new pivot from existing rows.
    for (auto& row : rows_)
        if (row.test(*pivot))
            row ^= v;
    pivot_row_[*pivot] = static_cast<std::ptrdiff_t>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
}

bool Echelon::contains(BitVector v) const
{
    reduce(v);
    return v.none();
}

std::size_t rank(std::span<const BitVector> rows, std::size_t columns)
{
    Echelon e(columns);
    for (const auto& r : rows)
        e.insert(r);
    return e.rank();
}

std::vector<BitVector> left_kernel(std::span<const BitVector> rows, std::size_t columns)
{
    // Row-reduce [rows | identity]; rows whose left part vanishes carry kernel vectors.
    const std::size_t n = rows.size();
    std::vector<BitVector> kernel;
    Echelon left(columns + n);
    for (std::size_t i = 0; i < n; ++i) {
        BitVector aug(columns + n);
        for (auto c : rows[i].ones())
            aug.set(c);
        aug.set(columns + i);
        left.reduce(aug);
        const auto pivot = aug.first();
        if (pivot && *pivot >= columns) {
            BitVector k(n);
            for (auto c : aug.ones())
                k.set(c - columns);
            kernel.push_back(std::move(k));
        } else {
            left.insert(std::move(aug));
        }
    }
    return kernel;
}

}  // namespace obstructa::f2
