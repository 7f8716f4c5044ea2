#include "design2/bases.hpp"

#include <numeric>
#include <stdexcept>

namespace design2 {

namespace {

bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (v == d) return true;
        if (v % d == 0) return false;
    }
    for (std::uint64_t d = 11; d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 acc = 1, base = a % m;
    while (e) {
        if (e & 1) acc = acc * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return std::uint64_t(acc);
}

// Smallest d dividing group_order with a^d = 1 mod p.
std::uint64_t mul_order_mod(std::uint64_t a, std::uint64_t p,
                            std::uint64_t group_order) {
    std::uint64_t best = group_order;
    for (std::uint64_t d = 1; d * d <= group_order; ++d) {
        if (group_order % d != 0) continue;
        if (powmod_u64(a, d, p) == 1 && d < best) best = d;
        std::uint64_t cd = group_order / d;
        if (powmod_u64(a, cd, p) == 1 && cd < best) best = cd;
    }
    return best;
}

// (2^bits - 1) / d for small odd d dividing it exactly.
BitVec all_ones_div(unsigned bits, std::uint64_t d) {
    BitVec q(bits);
    std::uint64_t rem = 0;
    for (unsigned i = bits; i-- > 0;) {
        rem = (rem << 1) | 1;
        if (rem >= d) {
            rem -= d;
            q.set(i, true);
        }
    }
    if (rem != 0) throw std::runtime_error("all_ones_div: not divisible");
    return q;
}

// Minimal polynomial of beta + beta^(-1) over GF(2) for beta a primitive
// (2n+1)-th root of unity, via the recurrence S_k(y) with
// S_k(x + 1/x) = x^k + x^(-k):  Q = 1 + S_1 + ... + S_n satisfies
// x^n Q(x + 1/x) = 1 + x + ... + x^(2n).
BitPoly minpoly_gauss_period(unsigned n) {
    BitPoly prev = BitPoly::zero();
    BitPoly cur = BitPoly::x();
    BitPoly q = BitPoly::one();
    if (n >= 1) q = q + cur;
    for (unsigned k = 2; k <= n; ++k) {
        BitPoly next = poly_mul(cur, BitPoly::x(), MulStrategy::schoolbook) + prev;
        prev = cur;
        cur = next;
        q = q + cur;
    }
    return q;
}

FieldElement frobenius_iterate(FieldElement a, unsigned times) {
    for (unsigned i = 0; i < times; ++i) a = field_mul(a, a);
    return a;
}

}  // namespace

AdmissibilityReport check_admissible(unsigned n) {
    if (n == 0) throw std::invalid_argument("check_admissible: n must be positive");
    AdmissibilityReport rep;
    rep.n = n;
    std::uint64_t p = 2ull * n + 1;
    rep.prime_ok = is_prime_u64(p);
    if (rep.prime_ok) {
        std::uint64_t ord = mul_order_mod(2, p, 2ull * n);
        rep.e = unsigned(2ull * n / ord);
        rep.gcd_ok = std::gcd(std::uint64_t(rep.e), std::uint64_t(n)) == 1;
    }
    rep.admissible = rep.prime_ok && rep.gcd_ok;
    return rep;
}

void BasisSpec::finish_coordinates() {
    unsigned n = ctx_->n();
    basis_mat_ = BitMatrix(n, n);
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < n; ++i)
            basis_mat_.set(i, j, elements_[j].coords().get(i));
    if (!basis_mat_.inverse(basis_mat_inv_))
        throw std::runtime_error("BasisSpec: elements are linearly dependent");
}

BitVec BasisSpec::to_coords(const FieldElement& y) const {
    return basis_mat_inv_.mul_vec(y.coords());
}

FieldElement BasisSpec::from_coords(const BitVec& c) const {
    if (c.size() != n()) throw std::invalid_argument("from_coords: width mismatch");
    return FieldElement(ctx_, basis_mat_.mul_vec(c));
}

BasisSpec BasisSpec::polynomial(FieldCtxPtr ctx) {
    BasisSpec b;
    b.kind_ = BasisKind::polynomial;
    b.ctx_ = std::move(ctx);
    unsigned n = b.ctx_->n();
    b.elements_.reserve(n);
    for (unsigned i = 0; i < n; ++i)
        b.elements_.push_back(FieldElement::from_poly(b.ctx_, BitPoly::monomial(i)));
    b.generator_ = FieldElement::from_poly(b.ctx_, BitPoly::x());
    b.W_ = compute_W(b);
    b.finish_coordinates();
    return b;
}

BasisSpec BasisSpec::dual_of_polynomial(FieldCtxPtr ctx) {
    BasisSpec primal = polynomial(std::move(ctx));
    unsigned n = primal.n();
    BitMatrix winv;
    if (!primal.W().inverse(winv))
        throw std::runtime_error("dual_of_polynomial: Gram matrix is singular");
    BasisSpec b;
    b.kind_ = BasisKind::dual_of_polynomial;
    b.ctx_ = primal.ctx();
    b.elements_.reserve(n);
    for (unsigned i = 0; i < n; ++i)
        b.elements_.emplace_back(b.ctx_, winv.row(i));
    b.generator_ = primal.generator();
    b.W_ = compute_W(b);
    if (!(b.W_ == winv))
        throw std::runtime_error("dual_of_polynomial: Gram matrix mismatch");
    b.finish_coordinates();
    return b;
}

BasisSpec build_selfdual_basis(unsigned n, MulStrategy strategy, MulConfig cfg) {
    AdmissibilityReport rep = check_admissible(n);
    if (!rep.admissible)
        throw std::invalid_argument("build_selfdual_basis: n = " + std::to_string(n) +
                                    " is not admissible");
    std::uint64_t p = 2ull * n + 1;

    // beta: any nonzero gamma raised to (2^(2n)-1)/p has order dividing the
    // prime p, so any result other than 1 is a primitive p-th root of unity.
    FieldCtxPtr big = FieldCtx::make(2 * n, strategy, cfg);
    BitVec exp = all_ones_div(2 * n, p);
    BitPoly beta_poly;
    for (std::uint64_t cand = 2;; ++cand) {
        BitPoly g = poly_mod(BitPoly::from_u64(cand), big->modulus());
        if (g.is_zero()) continue;
        BitPoly b = poly_powmod(g, exp, big->modulus(), strategy);
        if (!(b == BitPoly::one())) {
            beta_poly = b;
            break;
        }
        if (cand > 4 * p + 16)
            throw std::runtime_error("build_selfdual_basis: no p-th root of unity found");
    }
    FieldElement beta = FieldElement::from_poly(big, beta_poly);
    if (!field_pow(beta, p).is_one())
        throw std::runtime_error("build_selfdual_basis: beta order check failed");

    FieldElement alpha_big = beta + field_inv(beta);
    if (!(frobenius_iterate(alpha_big, n) == alpha_big))
        throw std::runtime_error("build_selfdual_basis: alpha not in the degree-n subfield");

    BitPoly q = minpoly_gauss_period(n);
    if (q.degree() != int(n) || !poly_is_irreducible(q))
        throw std::runtime_error("build_selfdual_basis: minimal polynomial check failed");
    FieldElement acc = FieldElement::zero(big);
    for (int k = int(n); k >= 0; --k) {
        acc = field_mul(acc, alpha_big);
        if (q.coeff(std::size_t(k))) acc = acc + FieldElement::one(big);
    }
    if (!acc.is_zero())
        throw std::runtime_error("build_selfdual_basis: alpha does not satisfy its minimal polynomial");

    // Working context: modulus = minpoly(alpha), so alpha is the residue of
    // x and the basis is its Frobenius orbit, all inside GF(2^n).
    BasisSpec b;
    b.kind_ = BasisKind::selfdual_gauss;
    b.ctx_ = FieldCtx::make_with_modulus(q, strategy, cfg);
    b.generator_ = FieldElement::from_poly(b.ctx_, BitPoly::x());
    b.elements_.reserve(n);
    b.elements_.push_back(b.generator_);
    for (unsigned j = 1; j < n; ++j)
        b.elements_.push_back(field_mul(b.elements_.back(), b.elements_.back()));

    b.exponent_order_.reserve(n);
    std::uint64_t val = 1;
    for (unsigned j = 0; j < n; ++j) {
        b.exponent_order_.push_back(unsigned(val <= p - val ? val : p - val));
        val = val * 2 % p;
    }

    b.W_ = compute_W(b);
    if (!b.W_.is_identity())
        throw std::runtime_error("build_selfdual_basis: basis is not self-dual");
    b.finish_coordinates();
    return b;
}

BitMatrix mult_matrix(const BasisSpec& basis, const FieldElement& r) {
    unsigned n = basis.n();
    BitMatrix m(n, n);
    for (unsigned j = 0; j < n; ++j) {
        BitVec col = basis.to_coords(field_mul(r, basis.elements()[j]));
        for (unsigned i = 0; i < n; ++i) m.set(i, j, col.get(i));
    }
    return m;
}

BitMatrix compute_W(const BasisSpec& basis) {
    unsigned n = basis.n();
    BitMatrix w(n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i; j < n; ++j) {
            bool t = trace(field_mul(basis.elements()[i], basis.elements()[j]));
            w.set(i, j, t);
            w.set(j, i, t);
        }
    return w;
}

LMatrix l_matrix(unsigned k) {
    if (k == 0) throw std::invalid_argument("l_matrix: k must be positive");
    LMatrix m;
    m.k = k;
    m.entries = BitMatrix(k, k);
    for (std::uint64_t j = 0; j < k; ++j)
        for (std::uint64_t i = 0; i <= j; ++i) {
            if ((j - i) % 2 != 0) continue;
            std::uint64_t half = (j - i) / 2;
            // C(j, half) mod 2 by Lucas: odd iff half is a submask of j.
            if ((half & ~j) == 0) m.entries.set(i, j, true);
        }
    return m;
}

namespace {

void emit_l_network(unsigned base, unsigned k,
                    std::vector<std::pair<unsigned, unsigned>>& out) {
    if (k <= 2) return;
    unsigned h = k / 2;
    emit_l_network(base, h, out);
    emit_l_network(base + h, h, out);
    for (unsigned j = 1; j < h; ++j)
        out.emplace_back(base + h + (h - j), base + j);
}

}  // namespace

std::vector<std::pair<unsigned, unsigned>> l_network(unsigned k) {
    if (k == 0) throw std::invalid_argument("l_network: k must be positive");
    unsigned full = 1;
    while (full < k) full *= 2;
    std::vector<std::pair<unsigned, unsigned>> all;
    emit_l_network(0, full, all);
    if (full == k) return all;
    std::vector<std::pair<unsigned, unsigned>> kept;
    for (auto [c, t] : all)
        if (c < k && t < k) kept.push_back({c, t});
    return kept;
}

BitVec l_apply(const BitVec& v) {
    BitVec w = v;
    for (auto [c, t] : l_network(unsigned(v.size())))
        if (w.get(c)) w.flip(t);
    return w;
}

BitVec l_inverse_apply(const BitVec& v) {
    BitVec w = v;
    auto net = l_network(unsigned(v.size()));
    for (auto it = net.rbegin(); it != net.rend(); ++it)
        if (w.get(it->first)) w.flip(it->second);
    return w;
}

}  // namespace design2
