#include "design2/sl2.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace design2 {

using boost::multiprecision::cpp_int;

namespace {

void require_same_ctx(const FieldElement& a, const FieldElement& b) {
    if (a.ctx() != b.ctx()) throw std::invalid_argument("Sl2Element: mixed field contexts");
}

cpp_int group_order(unsigned n) { return (cpp_int(1) << (3 * n)) - (cpp_int(1) << n); }

FieldElement element_from_cpp_bits(const FieldCtxPtr& ctx, const cpp_int& v) {
    unsigned n = ctx->n();
    BitVec coords(n);
    for (unsigned i = 0; i < n; ++i)
        if (bit_test(v, i)) coords.set(i, true);
    return FieldElement(ctx, coords);
}

}  // namespace

Sl2Element::Sl2Element(FieldElement alpha, FieldElement beta, FieldElement gamma,
                       FieldElement delta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)),
      delta_(std::move(delta)) {
    require_same_ctx(alpha_, beta_);
    require_same_ctx(alpha_, gamma_);
    require_same_ctx(alpha_, delta_);
    FieldElement det = field_mul(alpha_, delta_) + field_mul(beta_, gamma_);
    if (!det.is_one()) throw std::invalid_argument("Sl2Element: determinant is not 1");
}

Sl2Element Sl2Element::identity(const FieldCtxPtr& ctx) {
    return Sl2Element(FieldElement::one(ctx), FieldElement::zero(ctx), FieldElement::zero(ctx),
                      FieldElement::one(ctx));
}

Sl2Element Sl2Element::mul(const Sl2Element& rhs) const {
    return Sl2Element(
        field_mul(alpha_, rhs.alpha_) + field_mul(gamma_, rhs.beta_),
        field_mul(beta_, rhs.alpha_) + field_mul(delta_, rhs.beta_),
        field_mul(alpha_, rhs.gamma_) + field_mul(gamma_, rhs.delta_),
        field_mul(beta_, rhs.gamma_) + field_mul(delta_, rhs.delta_));
}

bool Sl2Element::operator==(const Sl2Element& other) const {
    return alpha_ == other.alpha_ && beta_ == other.beta_ && gamma_ == other.gamma_ &&
           delta_ == other.delta_;
}

Sl2Element Generator::matrix(const FieldCtxPtr& ctx) const {
    FieldElement zero = FieldElement::zero(ctx);
    FieldElement one = FieldElement::one(ctx);
    switch (kind) {
        case GeneratorKind::diag:
            return Sl2Element(*r, zero, zero, field_inv(*r));
        case GeneratorKind::lower_unit:
            return Sl2Element(one, one, zero, one);
        case GeneratorKind::upper_unit:
            return Sl2Element(one, zero, one, one);
        case GeneratorKind::swap:
            return Sl2Element(zero, one, one, zero);
    }
    throw std::invalid_argument("Generator::matrix: bad kind");
}

void GeneratorWord::push_diag(const FieldElement& r) {
    if (r.ctx() != ctx_) throw std::invalid_argument("GeneratorWord: mixed field contexts");
    if (r.is_zero()) throw std::invalid_argument("GeneratorWord: diag scale must be nonzero");
    factors_.push_back(Generator{GeneratorKind::diag, r});
}

void GeneratorWord::push(GeneratorKind kind) {
    if (kind == GeneratorKind::diag)
        throw std::invalid_argument("GeneratorWord: diag factors carry a scale");
    factors_.push_back(Generator{kind, std::nullopt});
}

Sl2Element GeneratorWord::product() const {
    Sl2Element acc = Sl2Element::identity(ctx_);
    for (const Generator& g : factors_) acc = acc.mul(g.matrix(ctx_));
    return acc;
}

Sl2Element decode_index(const FieldCtxPtr& ctx, const BitVec& index) {
    unsigned n = ctx->n();
    cpp_int x = 0;
    for (std::size_t w = 0; w < index.word_count(); ++w)
        x |= cpp_int(index.word(w)) << (64 * w);
    cpp_int order = group_order(n);
    if (x >= order) throw std::invalid_argument("decode_index: index out of range");

    cpp_int branch_a = ((cpp_int(1) << n) - 1) << (2 * n);
    cpp_int low_mask = (cpp_int(1) << n) - 1;
    if (x < branch_a) {
        FieldElement alpha = element_from_cpp_bits(ctx, (x >> (2 * n)) + 1);
        FieldElement beta = element_from_cpp_bits(ctx, x & low_mask);
        FieldElement gamma = element_from_cpp_bits(ctx, (x >> n) & low_mask);
        FieldElement delta =
            field_mul(FieldElement::one(ctx) + field_mul(beta, gamma), field_inv(alpha));
        return Sl2Element(alpha, beta, gamma, delta);
    }
    cpp_int rest = x - branch_a;
    FieldElement gamma = element_from_cpp_bits(ctx, (rest >> n) + 1);
    FieldElement delta = element_from_cpp_bits(ctx, rest & low_mask);
    return Sl2Element(FieldElement::zero(ctx), field_inv(gamma), gamma, delta);
}

Sl2Sample sample_uniform(const FieldCtxPtr& ctx, BitSource& rng) {
    unsigned n = ctx->n();
    unsigned nbits = 3 * n + 1;
    cpp_int order = group_order(n);
    cpp_int bound = 2 * order;
    std::size_t start = rng.bits_consumed();
    cpp_int x;
    for (;;) {
        x = 0;
        for (unsigned got = 0; got < nbits;) {
            unsigned take = std::min(64u, nbits - got);
            x |= cpp_int(rng.next_bits(take)) << got;
            got += take;
        }
        if (x < bound) break;
    }
    if (x >= order) x -= order;

    BitVec index(3 * n);
    for (unsigned i = 0; i < 3 * n; ++i)
        if (bit_test(x, i)) index.set(i, true);
    return Sl2Sample{decode_index(ctx, index), rng.bits_consumed() - start};
}

namespace {

// (1 0; s 1) as diag(t^-1) lower_unit diag(t) with t^2 = s; degenerate
// cases shrink the word.
void push_lower_conjugate(GeneratorWord& w, const FieldElement& s) {
    if (s.is_zero()) return;
    if (s.is_one()) {
        w.push(GeneratorKind::lower_unit);
        return;
    }
    FieldElement t = field_sqrt(s);
    w.push_diag(field_inv(t));
    w.push(GeneratorKind::lower_unit);
    w.push_diag(t);
}

// (1 u; 0 1) = swap (1 0; u 1) swap.
void push_upper_via_swap(GeneratorWord& w, const FieldElement& u) {
    if (u.is_zero()) return;
    w.push(GeneratorKind::swap);
    push_lower_conjugate(w, u);
    w.push(GeneratorKind::swap);
}

// (1 u; 0 1) = diag(t) upper_unit diag(t^-1) with t^2 = u; stays inside
// the upper-triangular generator set.
void push_upper_conjugate(GeneratorWord& w, const FieldElement& u) {
    if (u.is_zero()) return;
    if (u.is_one()) {
        w.push(GeneratorKind::upper_unit);
        return;
    }
    FieldElement t = field_sqrt(u);
    w.push_diag(t);
    w.push(GeneratorKind::upper_unit);
    w.push_diag(field_inv(t));
}

void push_diag_unless_one(GeneratorWord& w, const FieldElement& r) {
    if (!r.is_one()) w.push_diag(r);
}

}  // namespace

GeneratorWord decompose(const Sl2Element& m) {
    GeneratorWord w(m.ctx());
    if (!m.alpha().is_zero()) {
        // M = (1 0; beta/alpha 1) (1 alpha gamma; 0 1) diag(alpha)
        push_lower_conjugate(w, field_mul(m.beta(), field_inv(m.alpha())));
        push_upper_via_swap(w, field_mul(m.gamma(), m.alpha()));
        push_diag_unless_one(w, m.alpha());
    } else {
        // M = (1 0; delta/gamma 1) diag(gamma) swap, with beta = gamma^-1
        push_lower_conjugate(w, field_mul(m.delta(), field_inv(m.gamma())));
        push_diag_unless_one(w, m.gamma());
        w.push(GeneratorKind::swap);
    }
    return w;
}

GeneratorWord decompose_triangular(const Sl2Element& m, TriangularKind which) {
    GeneratorWord w(m.ctx());
    if (which == TriangularKind::lower) {
        if (!m.gamma().is_zero())
            throw std::invalid_argument("decompose_triangular: element is not lower-triangular");
        // M = (1 0; beta delta 1) diag(alpha), delta = alpha^-1
        push_lower_conjugate(w, field_mul(m.beta(), m.delta()));
        push_diag_unless_one(w, m.alpha());
    } else {
        if (!m.beta().is_zero())
            throw std::invalid_argument("decompose_triangular: element is not upper-triangular");
        push_upper_conjugate(w, field_mul(m.gamma(), m.alpha()));
        push_diag_unless_one(w, m.alpha());
    }
    return w;
}

std::pair<FieldElement, FieldElement> act_on_pair(const Sl2Element& m, const FieldElement& a,
                                                  const FieldElement& b) {
    if (a.ctx() != m.ctx() || b.ctx() != m.ctx())
        throw std::invalid_argument("act_on_pair: mixed field contexts");
    return {field_mul(m.alpha(), a) + field_mul(m.gamma(), b),
            field_mul(m.beta(), a) + field_mul(m.delta(), b)};
}

std::vector<Sl2Element> enumerate_sl2(const FieldCtxPtr& ctx, Sl2Subgroup subgroup) {
    unsigned n = ctx->n();
    if (n > 4) throw std::invalid_argument("enumerate_sl2: n capped at 4");
    std::uint64_t q = 1ull << n;
    std::vector<Sl2Element> out;
    auto el = [&](std::uint64_t v) { return FieldElement::from_u64(ctx, v); };

    if (subgroup == Sl2Subgroup::full) {
        for (std::uint64_t a = 1; a < q; ++a)
            for (std::uint64_t bb = 0; bb < q; ++bb)
                for (std::uint64_t g = 0; g < q; ++g) {
                    FieldElement alpha = el(a), beta = el(bb), gamma = el(g);
                    FieldElement delta = field_mul(
                        FieldElement::one(ctx) + field_mul(beta, gamma), field_inv(alpha));
                    out.emplace_back(alpha, beta, gamma, delta);
                }
        for (std::uint64_t g = 1; g < q; ++g)
            for (std::uint64_t d = 0; d < q; ++d)
                out.emplace_back(FieldElement::zero(ctx), field_inv(el(g)), el(g), el(d));
    } else if (subgroup == Sl2Subgroup::lower) {
        for (std::uint64_t a = 1; a < q; ++a)
            for (std::uint64_t bb = 0; bb < q; ++bb)
                out.emplace_back(el(a), el(bb), FieldElement::zero(ctx), field_inv(el(a)));
    } else {
        for (std::uint64_t a = 1; a < q; ++a)
            for (std::uint64_t g = 0; g < q; ++g)
                out.emplace_back(el(a), FieldElement::zero(ctx), el(g), field_inv(el(a)));
    }
    return out;
}

MixingTable mixing_statistics(Sl2Subgroup subgroup, unsigned n) {
    if (n == 0 || n > 4)
        throw std::invalid_argument("mixing_statistics: n must be in [1, 4]");
    FieldCtxPtr ctx = FieldCtx::make(n);
    std::vector<Sl2Element> group = enumerate_sl2(ctx, subgroup);

    std::uint64_t q = 1ull << n;
    std::size_t pairs = q * q - 1;
    MixingTable table;
    table.n = n;
    table.group_size = group.size();
    table.counts.assign(pairs, std::vector<std::size_t>(pairs, 0));

    for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b) {
            if (a == 0 && b == 0) continue;
            std::size_t row = (a << n | b) - 1;
            FieldElement fa = FieldElement::from_u64(ctx, a);
            FieldElement fb = FieldElement::from_u64(ctx, b);
            for (const Sl2Element& m : group) {
                auto [pa, pb] = act_on_pair(m, fa, fb);
                std::uint64_t col = pa.coords().low_u64() << n | pb.coords().low_u64();
                ++table.counts[row][col - 1];
            }
        }
    return table;
}

}  // namespace design2
