#include "design2/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace design2 {

BitVec BitVec::from_u64(std::uint64_t value, std::size_t nbits) {
    BitVec v(nbits);
    if (!v.words_.empty()) {
        v.words_[0] = value;
        v.trim_tail();
    }
    return v;
}

void BitVec::clear() {
    for (auto& w : words_) w = 0;
}

void BitVec::resize(std::size_t nbits) {
    nbits_ = nbits;
    words_.resize((nbits + 63) / 64, 0);
    trim_tail();
}

void BitVec::trim_tail() {
    std::size_t rem = nbits_ & 63;
    if (rem != 0 && !words_.empty())
        words_.back() &= (std::uint64_t(1) << rem) - 1;
}

void BitVec::xor_with(const BitVec& other) {
    if (other.nbits_ != nbits_)
        throw std::invalid_argument("BitVec::xor_with: size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
}

void BitVec::xor_shifted(const BitVec& other, std::size_t shift) {
    if (other.nbits_ == 0) return;
    if (other.nbits_ + shift > nbits_)
        throw std::invalid_argument("BitVec::xor_shifted: overflow");
    std::size_t wshift = shift >> 6, bshift = shift & 63;
    if (bshift == 0) {
        for (std::size_t i = 0; i < other.words_.size(); ++i)
            words_[i + wshift] ^= other.words_[i];
    } else {
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < other.words_.size(); ++i) {
            std::uint64_t w = other.words_[i];
            words_[i + wshift] ^= (w << bshift) | carry;
            carry = w >> (64 - bshift);
        }
        if (carry != 0) words_[wshift + other.words_.size()] ^= carry;
    }
}

bool BitVec::any() const {
    for (auto w : words_)
        if (w != 0) return true;
    return false;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

int BitVec::highest_set() const {
    for (std::size_t i = words_.size(); i-- > 0;) {
        if (words_[i] != 0)
            return int(i * 64 + 63 - std::countl_zero(words_[i]));
    }
    return -1;
}

BitVec BitVec::extract(std::size_t pos, std::size_t len) const {
    BitVec out(len);
    std::size_t wshift = pos >> 6, bshift = pos & 63;
    for (std::size_t i = 0; i < out.words_.size(); ++i) {
        std::uint64_t lo = (wshift + i < words_.size()) ? words_[wshift + i] : 0;
        std::uint64_t w = lo >> bshift;
        if (bshift != 0 && wshift + i + 1 < words_.size())
            w |= words_[wshift + i + 1] << (64 - bshift);
        out.words_[i] = w;
    }
    out.trim_tail();
    return out;
}

std::string BitVec::to_string01() const {
    std::string s;
    s.reserve(nbits_);
    for (std::size_t i = 0; i < nbits_; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
}

bool dot(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.word_count(); ++i)
        acc ^= a.word(i) & b.word(i);
    return std::popcount(acc) & 1;
}

BitVec bit_and(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("bit_and: size mismatch");
    BitVec r(a.size());
    for (std::size_t i = 0; i < a.word_count(); ++i)
        r.word_ref(i) = a.word(i) & b.word(i);
    return r;
}

BitVec bit_xor(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("bit_xor: size mismatch");
    BitVec r = a;
    r.xor_with(b);
    return r;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitVec BitMatrix::mul_vec(const BitVec& v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("BitMatrix::mul_vec: size mismatch");
    BitVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (dot(data_[r], v)) out.set(r, true);
    return out;
}

BitMatrix BitMatrix::mul(const BitMatrix& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("BitMatrix::mul: shape mismatch");
    BitMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k)
            if (data_[r].get(k)) out.data_[r].xor_with(other.data_[k]);
    return out;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (data_[r].get(c)) out.set(c, r, true);
    return out;
}

bool BitMatrix::inverse(BitMatrix& out) const {
    if (rows_ != cols_) return false;
    std::size_t n = rows_;
    BitMatrix a = *this;
    BitMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && !a.get(piv, col)) ++piv;
        if (piv == n) return false;
        std::swap(a.data_[piv], a.data_[col]);
        std::swap(inv.data_[piv], inv.data_[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != col && a.get(r, col)) {
                a.data_[r].xor_with(a.data_[col]);
                inv.data_[r].xor_with(inv.data_[col]);
            }
        }
    }
    out = inv;
    return true;
}

std::size_t BitMatrix::rank() const {
    BitMatrix a = *this;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t piv = rank;
        while (piv < rows_ && !a.get(piv, col)) ++piv;
        if (piv == rows_) continue;
        std::swap(a.data_[piv], a.data_[rank]);
        for (std::size_t r = 0; r < rows_; ++r)
            if (r != rank && a.get(r, col)) a.data_[r].xor_with(a.data_[rank]);
        ++rank;
    }
    return rank;
}

bool BitMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r + 1; c < cols_; ++c)
            if (get(r, c) != get(c, r)) return false;
    return true;
}

bool BitMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c) != (r == c)) return false;
    return true;
}

bool BitMatrix::is_zero() const {
    for (std::size_t r = 0; r < rows_; ++r)
        if (data_[r].any()) return false;
    return true;
}

std::string BitMatrix::to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
        s += data_[r].to_string01();
        s.push_back('\n');
    }
    return s;
}

}  // namespace design2
