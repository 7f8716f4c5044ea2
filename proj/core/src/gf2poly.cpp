#include "design2/gf2poly.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace design2 {

const char* to_string(MulStrategy s) {
    switch (s) {
        case MulStrategy::schoolbook: return "schoolbook";
        case MulStrategy::karatsuba: return "karatsuba";
        case MulStrategy::fft_radix3: return "fft_radix3";
    }
    return "?";
}

bool parse_strategy(const std::string& name, MulStrategy& out) {
    if (name == "schoolbook") { out = MulStrategy::schoolbook; return true; }
    if (name == "karatsuba") { out = MulStrategy::karatsuba; return true; }
    if (name == "fft_radix3") { out = MulStrategy::fft_radix3; return true; }
    return false;
}

void BitPoly::trim() {
    int d = bits_.highest_set();
    bits_.resize(d + 1);
}

BitPoly BitPoly::monomial(std::size_t d) {
    BitVec v(d + 1);
    v.set(d, true);
    return BitPoly(std::move(v));
}

BitPoly BitPoly::from_u64(std::uint64_t bits) {
    return BitPoly(BitVec::from_u64(bits, 64));
}

BitPoly BitPoly::operator+(const BitPoly& other) const {
    const BitPoly& big = coeff_count() >= other.coeff_count() ? *this : other;
    const BitPoly& small = coeff_count() >= other.coeff_count() ? other : *this;
    BitVec out = big.bits_;
    if (small.coeff_count() > 0) out.xor_shifted(small.bits_, 0);
    return BitPoly(std::move(out));
}

std::uint64_t BitPoly::to_u64() const {
    if (degree() >= 64) throw std::invalid_argument("BitPoly::to_u64: too large");
    return bits_.low_u64();
}

std::string BitPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (!coeff(i)) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) s += "1";
        else if (i == 1) s += "x";
        else s += "x^" + std::to_string(i);
    }
    return s;
}

namespace {

// --- schoolbook -----------------------------------------------------------

BitVec raw_mul_schoolbook(const BitVec& a, const BitVec& b) {
    BitVec out(a.size() + b.size());
    for (std::size_t w = 0; w < a.word_count(); ++w) {
        std::uint64_t bits = a.word(w);
        while (bits != 0) {
            unsigned tz = unsigned(__builtin_ctzll(bits));
            bits &= bits - 1;
            out.xor_shifted(b, w * 64 + tz);
        }
    }
    return out;
}

// --- karatsuba -------------------------------------------------------------

BitVec raw_mul_karatsuba(const BitVec& a, const BitVec& b,
                         std::size_t threshold) {
    std::size_t la = a.size(), lb = b.size();
    if (la == 0 || lb == 0) return BitVec(la + lb);
    if (la < threshold || lb < threshold) return raw_mul_schoolbook(a, b);
    std::size_t h = (std::max(la, lb) + 1) / 2;
    BitVec a0 = a.extract(0, std::min(h, la));
    BitVec a1 = la > h ? a.extract(h, la - h) : BitVec(0);
    BitVec b0 = b.extract(0, std::min(h, lb));
    BitVec b1 = lb > h ? b.extract(h, lb - h) : BitVec(0);

    BitVec p0 = raw_mul_karatsuba(a0, b0, threshold);
    BitVec p2 = raw_mul_karatsuba(a1, b1, threshold);

    BitVec as(h), bs(h);
    as.xor_shifted(a0, 0);
    if (a1.size() > 0) as.xor_shifted(a1, 0);
    bs.xor_shifted(b0, 0);
    if (b1.size() > 0) bs.xor_shifted(b1, 0);
    BitVec p1 = raw_mul_karatsuba(as, bs, threshold);

    BitVec out(la + lb);
    out.xor_shifted(p0, 0);
    BitVec mid(2 * h);
    mid.xor_shifted(p0.extract(0, std::min(p0.size(), 2 * h)), 0);
    mid.xor_shifted(p1.extract(0, std::min(p1.size(), 2 * h)), 0);
    if (p2.size() > 0) mid.xor_shifted(p2.extract(0, std::min(p2.size(), 2 * h)), 0);
    // mid and p2 may stick out past la+lb-1 only with zero bits; clip them.
    int mh = mid.highest_set();
    if (mh >= 0) out.xor_shifted(mid.extract(0, std::size_t(mh) + 1), h);
    int p2h = p2.highest_set();
    if (p2h >= 0) out.xor_shifted(p2.extract(0, std::size_t(p2h) + 1), 2 * h);
    return out;
}

// --- radix-3 FFT (Schoenhage) ----------------------------------------------
//
// Multiplication is done modulo T_m = x^{2m} + x^m + 1, which divides
// x^{3m} - 1.  With m = t^2 * u and t a power of 3, inputs split into 2t
// chunks of m' = m/t bits; the chunk vectors are convolved with a radix-3
// FFT of length L = 3t over R' = GF(2)[x]/T_{m'}, where w = x^{m'/t} is a
// root of unity of order L and mu = x^{m'} a cube root of unity.  Chunk
// products have degree < 2m', so representing them in R' is lossless.

// e * x^s mod T_mp, for e of width 2*mp and 0 <= s < 3*mp.
BitVec mulx_pow(const BitVec& e, std::size_t s, std::size_t mp) {
    BitVec tmp(3 * mp + 2 * mp);
    tmp.xor_shifted(e, s);
    // wrap x^{3mp} = 1
    BitVec high = tmp.extract(3 * mp, 2 * mp);
    BitVec cyc = tmp.extract(0, 3 * mp);
    if (high.any()) cyc.xor_shifted(high, 0);
    // fold x^{2mp+j} = x^{mp+j} + x^j
    BitVec out = cyc.extract(0, 2 * mp);
    BitVec hi = cyc.extract(2 * mp, mp);
    if (hi.any()) {
        out.xor_shifted(hi, 0);
        out.xor_shifted(hi, mp);
    }
    return out;
}

// In-place DFT of length L = 3^k over R'; root = x^{base_exp}.
void fft3(std::vector<BitVec>& v, std::size_t base_exp, std::size_t mp) {
    std::size_t L = v.size();
    if (L == 1) return;
    std::size_t Ld = L / 3;
    std::size_t cyc = 3 * mp;
    std::vector<BitVec> v0(Ld), v1(Ld), v2(Ld);
    for (std::size_t k = 0; k < Ld; ++k) {
        v0[k] = std::move(v[3 * k]);
        v1[k] = std::move(v[3 * k + 1]);
        v2[k] = std::move(v[3 * k + 2]);
    }
    std::size_t sub_exp = (base_exp * 3) % cyc;
    fft3(v0, sub_exp, mp);
    fft3(v1, sub_exp, mp);
    fft3(v2, sub_exp, mp);
    // Cube root of unity for this direction: mu = root^{L/3}.
    std::size_t mu = (base_exp * Ld) % cyc;
    std::size_t mu2 = (2 * mu) % cyc;
    for (std::size_t q = 0; q < Ld; ++q) {
        BitVec vp = mulx_pow(v1[q], (base_exp * q) % cyc, mp);
        BitVec wp = mulx_pow(v2[q], (base_exp * 2 * q) % cyc, mp);
        BitVec A = v0[q];
        A.xor_with(vp);
        A.xor_with(wp);
        BitVec B = v0[q];
        B.xor_with(mulx_pow(vp, mu, mp));
        B.xor_with(mulx_pow(wp, mu2, mp));
        BitVec C = v0[q];
        C.xor_with(mulx_pow(vp, mu2, mp));
        C.xor_with(mulx_pow(wp, mu, mp));
        v[q] = std::move(A);
        v[q + Ld] = std::move(B);
        v[q + 2 * Ld] = std::move(C);
    }
}

BitVec raw_mul_dispatch(const BitVec& a, const BitVec& b, const MulConfig& cfg,
                        bool allow_fft);

BitVec reduce_mod_T(const BitVec& prod, std::size_t mp) {
    // prod has degree < 4mp; fold twice.
    BitVec out = prod.extract(0, 2 * mp);
    BitVec hi = prod.extract(2 * mp, 2 * mp);
    // x^{2mp+j} = x^{mp+j} + x^j for j < mp; apply to the 2mp-wide hi part:
    // first fold hi's own upper half (degrees >= 3mp wrap to < 2mp twice).
    BitVec hi2 = hi.extract(mp, mp);  // degrees 3mp..4mp-1 -> x^{mp+j}+x^j applied twice
    BitVec hi1 = hi.extract(0, mp);
    // x^{3mp+j} = x^{3mp}*x^j = x^j (since x^{3mp} = 1)... handled via cyclic wrap:
    if (hi2.any()) out.xor_shifted(hi2, 0);  // x^{3mp+j} = x^j
    if (hi1.any()) {
        out.xor_shifted(hi1, 0);
        out.xor_shifted(hi1, mp);
    }
    return out;
}

std::size_t pow3_at_most(std::size_t x) {
    std::size_t t = 1;
    while (t * 3 <= x) t *= 3;
    return t;
}

BitVec raw_mul_fft(const BitVec& a, const BitVec& b, const MulConfig& cfg) {
    std::size_t la = a.size(), lb = b.size();
    if (la == 0 || lb == 0) return BitVec(la + lb);
    if (la < cfg.fft_threshold || lb < cfg.fft_threshold)
        return raw_mul_schoolbook(a, b);

    // Need 2m >= la + lb - 1 product coefficients.
    std::size_t m_base = (la + lb) / 2 + 1;
    std::size_t t = pow3_at_most(std::size_t(1) << ((63 - __builtin_clzll(m_base)) / 2 + 1));
    // Aim for t ~ sqrt(m_base); adjust downward so that u >= 1.
    while (t > 3 && t * t > m_base) t /= 3;
    if (t < 3) t = 3;
    std::size_t u = (m_base + t * t - 1) / (t * t);
    std::size_t m = t * t * u;
    std::size_t mp = m / t;  // m' = t*u, divisible by t? t | mp requires t | t*u: yes.
    std::size_t L = 3 * t;
    std::size_t root_exp = mp / t;  // w = x^{m'/t}

    std::vector<BitVec> va(L, BitVec(2 * mp)), vb(L, BitVec(2 * mp));
    for (std::size_t i = 0; i < 2 * t; ++i) {
        BitVec ca = a.extract(i * mp, mp);
        BitVec cb = b.extract(i * mp, mp);
        if (ca.any()) va[i].xor_shifted(ca, 0);
        if (cb.any()) vb[i].xor_shifted(cb, 0);
    }

    std::size_t cyc = 3 * mp;
    fft3(va, root_exp, mp);
    fft3(vb, root_exp, mp);
    for (std::size_t i = 0; i < L; ++i) {
        BitVec prod = raw_mul_dispatch(va[i], vb[i], cfg, true);
        prod.resize(4 * mp);
        va[i] = reduce_mod_T(prod, mp);
    }
    fft3(va, (cyc - root_exp) % cyc, mp);  // inverse: root w^{-1}; L odd so scale is 1

    // Recombine sum_i x^{i*m'} * va[i] modulo x^{3m}-1, then modulo T_m.
    BitVec acc(3 * m + 2 * mp);
    for (std::size_t i = 0; i < L; ++i)
        if (va[i].any()) acc.xor_shifted(va[i], i * mp);
    BitVec over = acc.extract(3 * m, 2 * mp);
    BitVec cycv = acc.extract(0, 3 * m);
    if (over.any()) cycv.xor_shifted(over, 0);
    BitVec out = cycv.extract(0, 2 * m);
    BitVec hi = cycv.extract(2 * m, m);
    if (hi.any()) {
        out.xor_shifted(hi, 0);
        out.xor_shifted(hi, m);
    }
    out.resize(la + lb);
    return out;
}

BitVec raw_mul_dispatch(const BitVec& a, const BitVec& b, const MulConfig& cfg,
                        bool allow_fft) {
    if (allow_fft) return raw_mul_fft(a, b, cfg);
    return raw_mul_karatsuba(a, b, cfg.karatsuba_threshold);
}

}  // namespace

BitPoly poly_mul(const BitPoly& a, const BitPoly& b, MulStrategy strategy,
                 const MulConfig& cfg) {
    if (a.is_zero() || b.is_zero()) return BitPoly();
    BitVec out;
    switch (strategy) {
        case MulStrategy::schoolbook:
            out = raw_mul_schoolbook(a.bits(), b.bits());
            break;
        case MulStrategy::karatsuba:
            out = raw_mul_karatsuba(a.bits(), b.bits(), cfg.karatsuba_threshold);
            break;
        case MulStrategy::fft_radix3:
            out = raw_mul_fft(a.bits(), b.bits(), cfg);
            break;
    }
    return BitPoly(std::move(out));
}

PolyDivMod poly_divmod(const BitPoly& a, const BitPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero");
    int db = b.degree();
    BitVec rem = a.bits();
    rem.resize(std::max(a.coeff_count(), b.coeff_count()));
    BitVec quot(a.degree() >= db ? a.degree() - db + 1 : 0);
    for (int d = a.degree(); d >= db;) {
        if (rem.get(std::size_t(d))) {
            rem.xor_shifted(b.bits(), std::size_t(d - db));
            quot.set(std::size_t(d - db), true);
        }
        --d;
        while (d >= db && !rem.get(std::size_t(d))) --d;
    }
    return {BitPoly(std::move(quot)), BitPoly(std::move(rem))};
}

BitPoly poly_mod(const BitPoly& a, const BitPoly& m) {
    if (m.is_zero()) throw std::invalid_argument("poly_mod: zero modulus");
    if (a.degree() < m.degree()) return a;
    return poly_divmod(a, m).rem;
}

BitPoly poly_gcd(BitPoly a, BitPoly b) {
    while (!b.is_zero()) {
        BitPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BitPoly poly_square_mod(const BitPoly& a, const BitPoly& m) {
    // Squaring over GF(2) spreads coefficients: bit i -> bit 2i.
    if (a.is_zero()) return a;
    BitVec sq(2 * a.coeff_count());
    for (std::size_t i = 0; i < a.coeff_count(); ++i)
        if (a.coeff(i)) sq.set(2 * i, true);
    return poly_mod(BitPoly(std::move(sq)), m);
}

BitPoly poly_invmod(const BitPoly& a, const BitPoly& m) {
    if (a.is_zero()) throw std::invalid_argument("poly_invmod: zero input");
    // Extended Euclid: track s with s*a = r (mod m).
    BitPoly r0 = m, r1 = poly_mod(a, m);
    BitPoly s0 = BitPoly::zero(), s1 = BitPoly::one();
    while (!r1.is_zero()) {
        PolyDivMod qr = poly_divmod(r0, r1);
        BitPoly s2 = s0 + poly_mul(qr.quot, s1, MulStrategy::schoolbook);
        r0 = std::move(r1);
        r1 = std::move(qr.rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0)
        throw std::invalid_argument("poly_invmod: input not invertible");
    return poly_mod(s0, m);
}

BitPoly poly_mulmod(const BitPoly& a, const BitPoly& b, const BitPoly& m,
                    MulStrategy strategy, const MulConfig& cfg) {
    return poly_mod(poly_mul(a, b, strategy, cfg), m);
}

BitPoly poly_powmod(const BitPoly& a, const BitVec& e, const BitPoly& m,
                    MulStrategy strategy) {
    BitPoly result = poly_mod(BitPoly::one(), m);
    BitPoly base = poly_mod(a, m);
    int top = e.highest_set();
    for (int i = 0; i <= top; ++i) {
        if (e.get(std::size_t(i))) result = poly_mulmod(result, base, m, strategy);
        base = poly_mulmod(base, base, m, strategy);
    }
    return result;
}

BitPoly poly_powmod_u64(const BitPoly& a, std::uint64_t e, const BitPoly& m,
                        MulStrategy strategy) {
    return poly_powmod(a, BitVec::from_u64(e, 64), m, strategy);
}

bool poly_is_irreducible(const BitPoly& f) {
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    // Rabin: x^{2^n} = x mod f, and gcd(x^{2^{n/p}} - x, f) = 1 for primes p|n.
    BitPoly x = poly_mod(BitPoly::x(), f);
    BitPoly xp = x;
    std::vector<int> checkpoints;
    int nn = n;
    for (int p = 2; p * p <= nn; ++p) {
        if (nn % p == 0) {
            checkpoints.push_back(n / p);
            while (nn % p == 0) nn /= p;
        }
    }
    if (nn > 1) checkpoints.push_back(n / nn);
    std::vector<bool> mark(std::size_t(n) + 1, false);
    for (int c : checkpoints)
        if (c >= 1 && c < n) mark[std::size_t(c)] = true;
    for (int i = 1; i <= n; ++i) {
        xp = poly_square_mod(xp, f);
        if (i < n && mark[std::size_t(i)]) {
            BitPoly g = poly_gcd(xp + x, f);
            if (g.degree() != 0) return false;
        }
    }
    return xp == x;
}

BitPoly irreducible_poly(unsigned n) {
    if (n == 0) throw std::invalid_argument("irreducible_poly: n must be >= 1");
    if (n == 1) return BitPoly::x();
    // Candidates in increasing integer order: x^n + (low part k).
    for (std::uint64_t k = 1;; k += 2) {
        if (n < 64 && k >= (std::uint64_t(1) << n)) break;
        BitVec v(n + 1);
        for (unsigned i = 0; i < 64 && i < n; ++i)
            if ((k >> i) & 1) v.set(i, true);
        v.set(n, true);
        BitPoly cand(std::move(v));
        if (cand.bits().popcount() % 2 == 0) continue;  // divisible by x+1
        if (poly_is_irreducible(cand)) return cand;
    }
    throw std::runtime_error("irreducible_poly: none found");
}

}  // namespace design2
