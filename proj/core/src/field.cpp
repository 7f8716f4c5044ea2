#include "design2/field.hpp"

namespace design2 {

FieldCtx::FieldCtx(unsigned n, BitPoly modulus, MulStrategy strategy,
                   MulConfig cfg)
    : n_(n), modulus_(std::move(modulus)), strategy_(strategy), cfg_(cfg) {
    if (n_ == 0) throw std::invalid_argument("FieldCtx: n must be >= 1");
    if (modulus_.degree() != int(n_))
        throw std::invalid_argument("FieldCtx: modulus degree must equal n");
    if (!poly_is_irreducible(modulus_))
        throw std::invalid_argument("FieldCtx: modulus is reducible");
    trace_row_ = BitVec(n_);
    for (unsigned i = 0; i < n_; ++i) {
        // T(x^i) = sum of n Frobenius images of x^i.
        BitPoly acc = BitPoly::zero();
        BitPoly p = poly_mod(BitPoly::monomial(i), modulus_);
        for (unsigned j = 0; j < n_; ++j) {
            acc = acc + p;
            p = poly_square_mod(p, modulus_);
        }
        if (!acc.is_zero()) {
            if (acc.degree() != 0)
                throw std::runtime_error("FieldCtx: trace not in GF(2)");
            trace_row_.set(i, true);
        }
    }
}

std::shared_ptr<const FieldCtx> FieldCtx::make(unsigned n, MulStrategy strategy,
                                               MulConfig cfg) {
    return make_with_modulus(irreducible_poly(n), strategy, cfg);
}

std::shared_ptr<const FieldCtx> FieldCtx::make_with_modulus(BitPoly modulus,
                                                            MulStrategy strategy,
                                                            MulConfig cfg) {
    unsigned n = modulus.degree() > 0 ? unsigned(modulus.degree()) : 0;
    return std::shared_ptr<const FieldCtx>(
        new FieldCtx(n, std::move(modulus), strategy, cfg));
}

namespace {
void require_same_ctx(const FieldElement& a, const FieldElement& b) {
    if (a.ctx().get() != b.ctx().get())
        throw std::invalid_argument("field op: elements from different contexts");
}
}  // namespace

FieldElement::FieldElement(FieldCtxPtr ctx, BitVec coords)
    : ctx_(std::move(ctx)), coords_(std::move(coords)) {
    if (!ctx_) throw std::invalid_argument("FieldElement: null context");
    if (coords_.size() != ctx_->n())
        throw std::invalid_argument("FieldElement: coordinate width mismatch");
}

FieldElement FieldElement::zero(const FieldCtxPtr& ctx) {
    return FieldElement(ctx, BitVec(ctx->n()));
}

FieldElement FieldElement::one(const FieldCtxPtr& ctx) {
    return FieldElement(ctx, BitVec::from_u64(1, ctx->n()));
}

FieldElement FieldElement::from_poly(const FieldCtxPtr& ctx, const BitPoly& p) {
    BitPoly r = poly_mod(p, ctx->modulus());
    BitVec coords = r.bits();
    coords.resize(ctx->n());
    return FieldElement(ctx, std::move(coords));
}

FieldElement FieldElement::from_u64(const FieldCtxPtr& ctx, std::uint64_t bits) {
    return from_poly(ctx, BitPoly::from_u64(bits));
}

bool FieldElement::is_one() const {
    return coords_.size() > 0 && coords_.get(0) && coords_.popcount() == 1;
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
    require_same_ctx(*this, other);
    BitVec out = coords_;
    out.xor_with(other.coords_);
    return FieldElement(ctx_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
    return field_mul(*this, other);
}

bool FieldElement::operator==(const FieldElement& other) const {
    if (ctx_ == other.ctx_) return coords_ == other.coords_;
    // Distinct context objects still describe the same field when the
    // moduli agree; equality is then well defined coordinate-wise.
    if (!ctx_ || !other.ctx_ || !(ctx_->modulus() == other.ctx_->modulus()))
        return false;
    return coords_ == other.coords_;
}

FieldElement field_mul(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a, b);
    const auto& ctx = a.ctx();
    BitPoly prod = poly_mul(a.to_poly(), b.to_poly(), ctx->strategy(),
                            ctx->mul_config());
    return FieldElement::from_poly(ctx, prod);
}

FieldElement field_inv(const FieldElement& a) {
    if (a.is_zero()) throw std::invalid_argument("field_inv: zero input");
    BitPoly inv = poly_invmod(a.to_poly(), a.ctx()->modulus());
    return FieldElement::from_poly(a.ctx(), inv);
}

FieldElement field_sqrt(const FieldElement& a) {
    // t = a^{2^{n-1}} satisfies t^2 = a in characteristic 2.
    FieldElement t = a;
    for (unsigned i = 0; i + 1 < a.ctx()->n(); ++i) t = field_mul(t, t);
    return t;
}

FieldElement field_pow(const FieldElement& a, std::uint64_t e) {
    BitPoly r = poly_powmod_u64(a.to_poly(), e, a.ctx()->modulus(),
                                a.ctx()->strategy());
    return FieldElement::from_poly(a.ctx(), r);
}

bool trace(const FieldElement& a) {
    return dot(a.ctx()->trace_row(), a.coords());
}

}  // namespace design2
