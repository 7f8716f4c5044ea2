#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace design2 {

// Dynamically sized bit vector, bit i stored at words_[i/64] bit (i%64).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    static BitVec from_u64(std::uint64_t value, std::size_t nbits);

    std::size_t size() const { return nbits_; }
    std::size_t word_count() const { return words_.size(); }
    std::uint64_t word(std::size_t w) const { return words_[w]; }
    std::uint64_t& word_ref(std::size_t w) { return words_[w]; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void clear();
    void resize(std::size_t nbits);

    // this ^= other; sizes must match.
    void xor_with(const BitVec& other);
    // this ^= (other << shift); this must be long enough to hold the result.
    void xor_shifted(const BitVec& other, std::size_t shift);

    bool any() const;
    std::size_t popcount() const;
    int highest_set() const;  // -1 when no bit is set
    std::uint64_t low_u64() const { return words_.empty() ? 0 : words_[0]; }

    // Copy of bits [pos, pos+len); reads past the end yield zeros.
    BitVec extract(std::size_t pos, std::size_t len) const;

    bool operator==(const BitVec&) const = default;

    std::string to_string01() const;  // index 0 first

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;

    void trim_tail();
};

// Parity of the bitwise AND of two equal-length vectors.
bool dot(const BitVec& a, const BitVec& b);
// Bitwise AND / XOR of two equal-length vectors.
BitVec bit_and(const BitVec& a, const BitVec& b);
BitVec bit_xor(const BitVec& a, const BitVec& b);

// Dense matrix over GF(2), stored row-major as BitVecs.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }
    const BitVec& row(std::size_t r) const { return data_[r]; }
    BitVec& row(std::size_t r) { return data_[r]; }

    BitVec mul_vec(const BitVec& v) const;
    BitMatrix mul(const BitMatrix& other) const;
    BitMatrix transpose() const;
    // Gauss-Jordan; returns false when singular (out untouched on failure).
    bool inverse(BitMatrix& out) const;
    std::size_t rank() const;

    bool is_symmetric() const;
    bool is_identity() const;
    bool is_zero() const;

    bool operator==(const BitMatrix&) const = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> data_;
};

}  // namespace design2
