#pragma once

#include <cstdint>
#include <string>

#include "design2/bitvec.hpp"

namespace design2 {

enum class MulStrategy { schoolbook, karatsuba, fft_radix3 };

const char* to_string(MulStrategy s);
bool parse_strategy(const std::string& name, MulStrategy& out);

// Degree cutoffs below which a strategy falls back to schoolbook.
struct MulConfig {
    std::size_t karatsuba_threshold = 32;
    std::size_t fft_threshold = 81;
};

// Polynomial over GF(2); bit i of the backing vector is the coefficient
// of x^i.  Canonical form: the vector length is exactly degree+1 (0 for
// the zero polynomial), so the degree sentinel for zero is -1.
class BitPoly {
public:
    BitPoly() = default;
    explicit BitPoly(BitVec bits) : bits_(std::move(bits)) { trim(); }

    static BitPoly zero() { return BitPoly(); }
    static BitPoly one() { return from_u64(1); }
    static BitPoly x() { return from_u64(2); }
    static BitPoly monomial(std::size_t d);
    static BitPoly from_u64(std::uint64_t bits);

    bool is_zero() const { return bits_.size() == 0; }
    int degree() const { return int(bits_.size()) - 1; }
    std::size_t coeff_count() const { return bits_.size(); }
    bool coeff(std::size_t i) const {
        return i < bits_.size() && bits_.get(i);
    }
    const BitVec& bits() const { return bits_; }

    BitPoly operator+(const BitPoly& other) const;
    bool operator==(const BitPoly&) const = default;

    std::uint64_t to_u64() const;  // requires degree < 64
    std::string to_string() const;  // e.g. "x^3 + x + 1"

private:
    BitVec bits_;
    void trim();
};

BitPoly poly_mul(const BitPoly& a, const BitPoly& b, MulStrategy strategy,
                 const MulConfig& cfg = MulConfig{});

struct PolyDivMod {
    BitPoly quot;
    BitPoly rem;
};
PolyDivMod poly_divmod(const BitPoly& a, const BitPoly& b);
BitPoly poly_mod(const BitPoly& a, const BitPoly& m);
BitPoly poly_gcd(BitPoly a, BitPoly b);
BitPoly poly_square_mod(const BitPoly& a, const BitPoly& m);
// Inverse of a mod m (gcd(a, m) = 1 required).
BitPoly poly_invmod(const BitPoly& a, const BitPoly& m);
BitPoly poly_mulmod(const BitPoly& a, const BitPoly& b, const BitPoly& m,
                    MulStrategy strategy = MulStrategy::schoolbook,
                    const MulConfig& cfg = MulConfig{});
// a^e mod m with the exponent given as a bit vector (LSB first).
BitPoly poly_powmod(const BitPoly& a, const BitVec& e, const BitPoly& m,
                    MulStrategy strategy = MulStrategy::schoolbook);
BitPoly poly_powmod_u64(const BitPoly& a, std::uint64_t e, const BitPoly& m,
                        MulStrategy strategy = MulStrategy::schoolbook);

bool poly_is_irreducible(const BitPoly& f);
// Lexicographically smallest irreducible polynomial of degree n, where
// polynomials are ordered as integers with the constant term in bit 0.
BitPoly irreducible_poly(unsigned n);

}  // namespace design2
