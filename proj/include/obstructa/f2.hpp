#pragma once

// Bit-packed linear algebra over F2. Vectors store 64 coordinates per word and
// all row operations are word-parallel XORs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace obstructa::f2 {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    bool operator==(const BitVector& other) const = default;

    bool none() const noexcept;
    std::size_t count() const noexcept;
    // Index of the lowest set bit, or nullopt for the zero vector.
    std::optional<std::size_t> first() const noexcept;
    std::vector<std::size_t> ones() const;

    // Grow to `size` coordinates, keeping existing bits.
    void resize(std::size_t size);

    std::span<const std::uint64_t> words() const noexcept { return words_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Incrementally maintained row-echelon basis of a subspace of F2^n. Each stored
// row is keyed by its pivot (lowest set bit) and no other stored row has that bit.
class Echelon {
public:
    explicit Echelon(std::size_t dimension) : dimension_(dimension) {}

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t rank() const noexcept { return rows_.size(); }

    // Reduces v in place against the basis; v ends up zero iff it was in the span.
    void reduce(BitVector& v) const;
    // Adds v to the span. Returns false (and leaves the basis unchanged) when v
    // already lies in it.
    bool insert(BitVector v);
    bool contains(BitVector v) const;

private:
    std::size_t dimension_;
    std::vector<BitVector> rows_;
    std::vector<std::ptrdiff_t> pivot_row_;  // pivot column -> row index or -1
};

// Rank of the span of `rows`.
std::size_t rank(std::span<const BitVector> rows, std::size_t columns);

// Basis of {c : sum_i c_i rows[i] = 0}, as vectors of length rows.size().
std::vector<BitVector> left_kernel(std::span<const BitVector> rows, std::size_t columns);

}  // namespace obstructa::f2
