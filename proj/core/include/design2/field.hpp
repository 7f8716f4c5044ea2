#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "design2/gf2poly.hpp"

namespace design2 {

// Immutable description of GF(2^n) as GF(2)[x]/(modulus).  Elements refer
// to their context by pointer; mixing contexts is rejected.
class FieldCtx {
public:
    static std::shared_ptr<const FieldCtx> make(
        unsigned n, MulStrategy strategy = MulStrategy::schoolbook,
        MulConfig cfg = MulConfig{});
    static std::shared_ptr<const FieldCtx> make_with_modulus(
        BitPoly modulus, MulStrategy strategy = MulStrategy::schoolbook,
        MulConfig cfg = MulConfig{});

    unsigned n() const { return n_; }
    const BitPoly& modulus() const { return modulus_; }
    MulStrategy strategy() const { return strategy_; }
    const MulConfig& mul_config() const { return cfg_; }
    // Coordinate row of the trace functional: trace(a) = dot(trace_row, a).
    const BitVec& trace_row() const { return trace_row_; }

private:
    FieldCtx(unsigned n, BitPoly modulus, MulStrategy strategy, MulConfig cfg);
    unsigned n_;
    BitPoly modulus_;
    MulStrategy strategy_;
    MulConfig cfg_;
    BitVec trace_row_;
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldCtxPtr ctx, BitVec coords);

    static FieldElement zero(const FieldCtxPtr& ctx);
    static FieldElement one(const FieldCtxPtr& ctx);
    // Reduce an arbitrary polynomial into the field.
    static FieldElement from_poly(const FieldCtxPtr& ctx, const BitPoly& p);
    static FieldElement from_u64(const FieldCtxPtr& ctx, std::uint64_t bits);

    const FieldCtxPtr& ctx() const { return ctx_; }
    const BitVec& coords() const { return coords_; }
    BitPoly to_poly() const { return BitPoly(coords_); }
    bool is_zero() const { return !coords_.any(); }
    bool is_one() const;

    FieldElement operator+(const FieldElement& other) const;
    FieldElement operator*(const FieldElement& other) const;
    bool operator==(const FieldElement& other) const;

    std::string to_string() const { return coords_.to_string01(); }

private:
    FieldCtxPtr ctx_;
    BitVec coords_;
};

FieldElement field_mul(const FieldElement& a, const FieldElement& b);
FieldElement field_inv(const FieldElement& a);  // a != 0
FieldElement field_sqrt(const FieldElement& a);
FieldElement field_pow(const FieldElement& a, std::uint64_t e);
bool trace(const FieldElement& a);

}  // namespace design2
