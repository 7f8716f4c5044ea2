#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "design2/synth.hpp"

namespace design2 {

unsigned alloc_wires(CliffordCircuit& c, unsigned k) {
    unsigned base = c.total_wires();
    c.grow_ancilla(c.n_ancilla() + k);
    return base;
}

void emit_inverse_range(CliffordCircuit& c, std::size_t begin, std::size_t end) {
    if (end > c.gates().size() || begin > end)
        throw std::invalid_argument("emit_inverse_range: bad range");
    for (std::size_t i = end; i-- > begin;) {
        Gate g = c.gates()[i];
        switch (g.kind) {
            case GateKind::S:
                c.add(GateKind::Sdg, g.a);
                break;
            case GateKind::Sdg:
                c.add(GateKind::S, g.a);
                break;
            case GateKind::CS:
                c.add(GateKind::CS, g.a, g.b);
                c.add(GateKind::CZ, g.a, g.b);
                break;
            default:
                c.add(g);
                break;
        }
    }
}

namespace {

using Taps = std::vector<std::uint8_t>;

// t ^= a & b via CS conjugation: CCZ(a,b,t) between Hadamards on t.
void emit_ccx(CliffordCircuit& c, unsigned a, unsigned b, unsigned t) {
    c.add(GateKind::H, t);
    c.add(GateKind::CS, a, t);
    c.add(GateKind::CS, b, t);
    c.add(GateKind::CNOT, a, b);
    c.add(GateKind::CS, b, t);
    c.add(GateKind::CZ, b, t);
    c.add(GateKind::CNOT, a, b);
    c.add(GateKind::H, t);
}

// dst digit += (-1)^negate * src digit (mod 4). The carry fires before
// the low bit flips; -s has the same low bit and hi(s) ^ lo(s) on top.
void z4_add(CliffordCircuit& c, const DigitRegister& d, std::size_t j,
            const DigitRegister& s, std::size_t i, bool negate) {
    unsigned dlo = d.lo[j], dhi = d.hi[j];
    unsigned slo = s.lo[i], shi = s.hi[i];
    assert(dhi != kNoWire);
    emit_ccx(c, slo, dlo, dhi);
    c.add(GateKind::CNOT, slo, dlo);
    if (shi != kNoWire) c.add(GateKind::CNOT, shi, dhi);
    if (negate) c.add(GateKind::CNOT, slo, dhi);
}

struct EngineGf2 {
    static constexpr int mod = 2;

    static DigitRegister fresh(CliffordCircuit& c, std::size_t k) {
        DigitRegister r;
        unsigned base = alloc_wires(c, static_cast<unsigned>(k));
        for (std::size_t i = 0; i < k; ++i) {
            r.lo.push_back(base + static_cast<unsigned>(i));
            r.hi.push_back(kNoWire);
        }
        return r;
    }

    static void add(CliffordCircuit& c, const DigitRegister& d, std::size_t j,
                    const DigitRegister& s, std::size_t i, bool) {
        c.add(GateKind::CNOT, s.lo[i], d.lo[j]);
    }

    static void acc(CliffordCircuit& c, std::uint8_t tap, const DigitRegister& d,
                    std::size_t j, const DigitRegister& s, std::size_t i, bool) {
        if (tap & 1) c.add(GateKind::CNOT, s.lo[i], d.lo[j]);
    }
};

struct EngineZ4 {
    static constexpr int mod = 4;

    static DigitRegister fresh(CliffordCircuit& c, std::size_t k) {
        DigitRegister r;
        unsigned base = alloc_wires(c, static_cast<unsigned>(2 * k));
        for (std::size_t i = 0; i < k; ++i) {
            r.lo.push_back(base + static_cast<unsigned>(2 * i));
            r.hi.push_back(base + static_cast<unsigned>(2 * i + 1));
        }
        return r;
    }

    static void add(CliffordCircuit& c, const DigitRegister& d, std::size_t j,
                    const DigitRegister& s, std::size_t i, bool negate) {
        z4_add(c, d, j, s, i, negate);
    }

    static void acc(CliffordCircuit& c, std::uint8_t tap, const DigitRegister& d,
                    std::size_t j, const DigitRegister& s, std::size_t i,
                    bool negate) {
        tap &= 3;
        if (tap == 0) return;
        if (tap == 2) {
            c.add(GateKind::CNOT, s.lo[i], d.hi[j]);
            return;
        }
        z4_add(c, d, j, s, i, negate ^ (tap == 3));
    }
};

DigitRegister reg_slice(const DigitRegister& r, std::size_t off, std::size_t len) {
    DigitRegister out;
    out.lo.assign(r.lo.begin() + off, r.lo.begin() + off + len);
    out.hi.assign(r.hi.begin() + off, r.hi.begin() + off + len);
    return out;
}

Taps taps_slice(const Taps& t, std::size_t off, std::size_t len) {
    return Taps(t.begin() + off, t.begin() + off + len);
}

Taps taps_add(const Taps& a, const Taps& b, int mod) {
    Taps out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        out[i] = static_cast<std::uint8_t>(v % mod);
    }
    return out;
}

bool taps_all_zero(const Taps& t, int mod) {
    for (std::uint8_t v : t)
        if (v % mod) return false;
    return true;
}

// --- classical arithmetic in Z_mod[x] / (x^{2mp} + x^{mp} + 1) ------------

Taps cl_mulx_pow(const Taps& e, std::size_t s, std::size_t mp, int mod) {
    std::size_t cyc = 3 * mp;
    std::vector<int> tmp(cyc, 0);
    for (std::size_t j = 0; j < e.size(); ++j) tmp[(j + s) % cyc] += e[j];
    std::vector<int> out(2 * mp, 0);
    for (std::size_t p = 0; p < 2 * mp; ++p) out[p] = tmp[p];
    for (std::size_t p = 2 * mp; p < cyc; ++p) {
        out[p - mp] -= tmp[p];
        out[p - 2 * mp] -= tmp[p];
    }
    Taps r(2 * mp);
    for (std::size_t p = 0; p < 2 * mp; ++p)
        r[p] = static_cast<std::uint8_t>(((out[p] % mod) + mod) % mod);
    return r;
}

void cl_fft3(std::vector<Taps>& v, std::size_t base_exp, std::size_t mp, int mod) {
    std::size_t L = v.size();
    if (L == 1) return;
    std::size_t Ld = L / 3;
    std::size_t cyc = 3 * mp;
    std::vector<Taps> v0(Ld), v1(Ld), v2(Ld);
    for (std::size_t k = 0; k < Ld; ++k) {
        v0[k] = std::move(v[3 * k]);
        v1[k] = std::move(v[3 * k + 1]);
        v2[k] = std::move(v[3 * k + 2]);
    }
    std::size_t sub_exp = (base_exp * 3) % cyc;
    cl_fft3(v0, sub_exp, mp, mod);
    cl_fft3(v1, sub_exp, mp, mod);
    cl_fft3(v2, sub_exp, mp, mod);
    std::size_t mu = (base_exp * Ld) % cyc;
    std::size_t mu2 = (2 * mu) % cyc;
    auto addin = [mod](Taps& a, const Taps& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = static_cast<std::uint8_t>((a[i] + b[i]) % mod);
    };
    for (std::size_t q = 0; q < Ld; ++q) {
        Taps vp = cl_mulx_pow(v1[q], (base_exp * q) % cyc, mp, mod);
        Taps wp = cl_mulx_pow(v2[q], (base_exp * 2 * q) % cyc, mp, mod);
        Taps A = v0[q];
        addin(A, vp);
        addin(A, wp);
        Taps B = v0[q];
        addin(B, cl_mulx_pow(vp, mu, mp, mod));
        addin(B, cl_mulx_pow(wp, mu2, mp, mod));
        Taps C = v0[q];
        addin(C, cl_mulx_pow(vp, mu2, mp, mod));
        addin(C, cl_mulx_pow(wp, mu, mp, mod));
        v[q] = std::move(A);
        v[q + Ld] = std::move(B);
        v[q + 2 * Ld] = std::move(C);
    }
}

std::size_t pow3_at_most(std::size_t x) {
    std::size_t t = 1;
    while (t * 3 <= x) t *= 3;
    return t;
}

// Reduce exponent p into the 2mp-wide representation of
// Z[x]/(x^{2mp}+x^{mp}+1): x^{3mp} = 1, then x^{2mp+q} = -x^{mp+q} - x^q.
struct FoldTerm {
    std::size_t pos;
    bool flip;
};

int fold_exponent(std::size_t p, std::size_t mp, FoldTerm out[2]) {
    p %= 3 * mp;
    if (p < 2 * mp) {
        out[0] = {p, false};
        return 1;
    }
    std::size_t q = p - 2 * mp;
    out[0] = {q + mp, true};
    out[1] = {q, true};
    return 2;
}

template <class E>
void conv_rec(CliffordCircuit& c, const Taps& taps, const DigitRegister& src,
              const DigitRegister& dst, bool neg, MulStrategy strategy,
              const MulConfig& cfg);

template <class E>
void conv_schoolbook(CliffordCircuit& c, const Taps& taps, const DigitRegister& src,
                     const DigitRegister& dst, bool neg) {
    for (std::size_t i = 0; i < taps.size(); ++i) {
        if (taps[i] % E::mod == 0) continue;
        for (std::size_t j = 0; j < src.size(); ++j)
            E::acc(c, taps[i], dst, i + j, src, j, neg);
    }
}

// In-place multiplication of the register contents by (1-x^h)^{-1}
// (ascending adds) or by (1-x^h) (descending subtracts).
template <class E>
void cascade_up(CliffordCircuit& c, const DigitRegister& r, std::size_t h) {
    for (std::size_t i = h; i < r.size(); ++i) E::add(c, r, i, r, i - h, false);
}

template <class E>
void cascade_down(CliffordCircuit& c, const DigitRegister& r, std::size_t h) {
    for (std::size_t i = r.size(); i-- > h;) E::add(c, r, i, r, i - h, true);
}

// dst += s * taps * src via (1-x^h)(D0 - x^h D2) + x^h Dmid, with the
// three half-size products recursing and the cascades supplying the
// (1-x^h) factors in place.
template <class E>
void conv_karatsuba(CliffordCircuit& c, const Taps& taps, const DigitRegister& src,
                    const DigitRegister& dst, bool neg, const MulConfig& cfg) {
    std::size_t lt = taps.size(), ls = src.size();
    std::size_t out_len = lt + ls - 1;
    std::size_t h = (std::max(lt, ls) + 1) / 2;
    if (lt <= h) {
        conv_rec<E>(c, taps, reg_slice(src, 0, h), reg_slice(dst, 0, lt + h - 1), neg,
                    MulStrategy::karatsuba, cfg);
        conv_rec<E>(c, taps, reg_slice(src, h, ls - h),
                    reg_slice(dst, h, lt + (ls - h) - 1), neg, MulStrategy::karatsuba,
                    cfg);
        return;
    }
    if (ls <= h) {
        conv_rec<E>(c, taps_slice(taps, 0, h), src, reg_slice(dst, 0, h + ls - 1), neg,
                    MulStrategy::karatsuba, cfg);
        conv_rec<E>(c, taps_slice(taps, h, lt - h), src,
                    reg_slice(dst, h, (lt - h) + ls - 1), neg, MulStrategy::karatsuba,
                    cfg);
        return;
    }
    std::size_t lt_hi = lt - h, ls_hi = ls - h;
    std::size_t need = 3 * h - 1;
    DigitRegister work = dst;
    if (out_len < need) {
        DigitRegister pad = E::fresh(c, need - out_len);
        work.lo.insert(work.lo.end(), pad.lo.begin(), pad.lo.end());
        work.hi.insert(work.hi.end(), pad.hi.begin(), pad.hi.end());
    }
    cascade_up<E>(c, work, h);
    conv_rec<E>(c, taps_slice(taps, 0, h), reg_slice(src, 0, h),
                reg_slice(work, 0, 2 * h - 1), neg, MulStrategy::karatsuba, cfg);
    conv_rec<E>(c, taps_slice(taps, h, lt_hi), reg_slice(src, h, ls_hi),
                reg_slice(work, h, lt_hi + ls_hi - 1), !neg, MulStrategy::karatsuba,
                cfg);
    cascade_down<E>(c, work, h);
    Taps tm = taps_add(taps_slice(taps, 0, h), taps_slice(taps, h, lt_hi), E::mod);
    DigitRegister mid = E::fresh(c, ls_hi);
    std::size_t build_begin = c.gates().size();
    for (std::size_t i = 0; i < ls_hi; ++i) {
        E::add(c, mid, i, reg_slice(src, 0, h), i, false);
        E::add(c, mid, i, reg_slice(src, h, ls_hi), i, false);
    }
    std::size_t build_end = c.gates().size();
    for (std::size_t i = ls_hi; i < h; ++i) {
        mid.lo.push_back(src.lo[i]);
        mid.hi.push_back(src.hi[i]);
    }
    conv_rec<E>(c, tm, mid, reg_slice(work, h, 2 * h - 1), neg,
                MulStrategy::karatsuba, cfg);
    emit_inverse_range(c, build_begin, build_end);
}

// dst block += x^e * src block in Z_mod[x]/(x^{2mp}+x^{mp}+1).
template <class E>
void block_acc(CliffordCircuit& c, const DigitRegister& dstb,
               const DigitRegister& srcb, std::size_t e, std::size_t mp, bool neg) {
    FoldTerm ft[2];
    for (std::size_t j = 0; j < srcb.size(); ++j) {
        int k = fold_exponent(j + e, mp, ft);
        for (int i = 0; i < k; ++i)
            E::add(c, dstb, ft[i].pos, srcb, j, neg ^ ft[i].flip);
    }
}

// Out-of-place radix-3 transform: consumes the input bank, returns a
// fresh bank holding the DFT with root x^{base_exp}.
template <class E>
std::vector<DigitRegister> fft_q(CliffordCircuit& c, std::vector<DigitRegister> v,
                                 std::size_t base_exp, std::size_t mp) {
    std::size_t L = v.size();
    if (L == 1) return v;
    std::size_t Ld = L / 3;
    std::size_t cyc = 3 * mp;
    std::vector<DigitRegister> v0, v1, v2;
    for (std::size_t k = 0; k < Ld; ++k) {
        v0.push_back(std::move(v[3 * k]));
        v1.push_back(std::move(v[3 * k + 1]));
        v2.push_back(std::move(v[3 * k + 2]));
    }
    std::size_t sub_exp = (base_exp * 3) % cyc;
    v0 = fft_q<E>(c, std::move(v0), sub_exp, mp);
    v1 = fft_q<E>(c, std::move(v1), sub_exp, mp);
    v2 = fft_q<E>(c, std::move(v2), sub_exp, mp);
    std::vector<DigitRegister> out;
    out.reserve(L);
    for (std::size_t i = 0; i < L; ++i) out.push_back(E::fresh(c, 2 * mp));
    std::size_t mu = (base_exp * Ld) % cyc;
    std::size_t mu2 = (2 * mu) % cyc;
    for (std::size_t q = 0; q < Ld; ++q) {
        std::size_t e1 = (base_exp * q) % cyc;
        std::size_t e2 = (base_exp * 2 * q) % cyc;
        block_acc<E>(c, out[q], v0[q], 0, mp, false);
        block_acc<E>(c, out[q], v1[q], e1, mp, false);
        block_acc<E>(c, out[q], v2[q], e2, mp, false);
        block_acc<E>(c, out[q + Ld], v0[q], 0, mp, false);
        block_acc<E>(c, out[q + Ld], v1[q], (e1 + mu) % cyc, mp, false);
        block_acc<E>(c, out[q + Ld], v2[q], (e2 + mu2) % cyc, mp, false);
        block_acc<E>(c, out[q + 2 * Ld], v0[q], 0, mp, false);
        block_acc<E>(c, out[q + 2 * Ld], v1[q], (e1 + mu2) % cyc, mp, false);
        block_acc<E>(c, out[q + 2 * Ld], v2[q], (e2 + mu) % cyc, mp, false);
    }
    return out;
}

// dstb += s * (taps (*) srcb) mod x^{2mp}+x^{mp}+1, raw product folded
// position by position. Large blocks build the raw product in scratch
// with the active strategy, fold-read it, then uncompute the scratch.
template <class E>
void conv_modT(CliffordCircuit& c, const Taps& taps, const DigitRegister& srcb,
               const DigitRegister& dstb, std::size_t mp, bool neg,
               const MulConfig& cfg) {
    FoldTerm ft[2];
    std::size_t nested_threshold = std::max<std::size_t>(32, 4 * cfg.fft_threshold);
    if (2 * mp <= nested_threshold) {
        for (std::size_t i = 0; i < taps.size(); ++i) {
            if (taps[i] % E::mod == 0) continue;
            for (std::size_t j = 0; j < srcb.size(); ++j) {
                int k = fold_exponent(i + j, mp, ft);
                for (int t = 0; t < k; ++t)
                    E::acc(c, taps[i], dstb, ft[t].pos, srcb, j, neg ^ ft[t].flip);
            }
        }
        return;
    }
    DigitRegister scratch = E::fresh(c, 4 * mp - 1);
    std::size_t b0 = c.gates().size();
    conv_rec<E>(c, taps, srcb, scratch, false, MulStrategy::fft_radix3, cfg);
    std::size_t b1 = c.gates().size();
    for (std::size_t p = 0; p < scratch.size(); ++p) {
        int k = fold_exponent(p, mp, ft);
        for (int t = 0; t < k; ++t)
            E::add(c, dstb, ft[t].pos, scratch, p, neg ^ ft[t].flip);
    }
    emit_inverse_range(c, b0, b1);
}

// Radix-3 sqrt-decomposition convolution. Mirrors the classical
// parameterization: chunks of mp coefficients in rings of width 2mp,
// L = 3t outer points with root x^{mp/t}, pointwise products mod T,
// inverse transform, then a carry-free recombine into dst. Everything
// except the recombine is uncomputed afterwards.
template <class E>
void conv_fft(CliffordCircuit& c, const Taps& taps, const DigitRegister& src,
              const DigitRegister& dst, bool neg, const MulConfig& cfg) {
    std::size_t la = taps.size(), lb = src.size();
    std::size_t raw_len = la + lb - 1;
    std::size_t m_base = (la + lb) / 2 + 1;
    std::size_t t =
        pow3_at_most(std::size_t(1) << ((63 - __builtin_clzll(m_base)) / 2 + 1));
    while (t > 3 && t * t > m_base) t /= 3;
    if (t < 3) t = 3;
    std::size_t u = (m_base + t * t - 1) / (t * t);
    std::size_t m = t * t * u;
    std::size_t mp = m / t;
    std::size_t L = 3 * t;
    std::size_t root_exp = mp / t;
    std::size_t cyc = 3 * mp;

    // Inverse transforms over Z4 carry a 1/L = 3^k scale; odd k flips
    // the sign of every recombined term.
    bool scale_neg = false;
    if (E::mod == 4) {
        std::size_t l3 = 0, lv = L;
        while (lv > 1) {
            lv /= 3;
            ++l3;
        }
        scale_neg = (l3 & 1) != 0;
    }

    std::vector<Taps> rhat(L, Taps(2 * mp, 0));
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < mp; ++j) {
            std::size_t idx = i * mp + j;
            if (idx < la) rhat[i][j] = static_cast<std::uint8_t>(taps[idx] % E::mod);
        }
    cl_fft3(rhat, root_exp, mp, E::mod);

    std::size_t gates_begin = c.gates().size();
    std::vector<DigitRegister> blocks;
    blocks.reserve(L);
    for (std::size_t i = 0; i < L; ++i) blocks.push_back(E::fresh(c, 2 * mp));
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < mp; ++j) {
            std::size_t idx = i * mp + j;
            if (idx < lb) E::add(c, blocks[i], j, src, idx, false);
        }
    blocks = fft_q<E>(c, std::move(blocks), root_exp, mp);
    std::vector<DigitRegister> prod;
    prod.reserve(L);
    for (std::size_t i = 0; i < L; ++i) prod.push_back(E::fresh(c, 2 * mp));
    for (std::size_t i = 0; i < L; ++i)
        if (!taps_all_zero(rhat[i], E::mod))
            conv_modT<E>(c, rhat[i], blocks[i], prod[i], mp, false, cfg);
    prod = fft_q<E>(c, std::move(prod), (cyc - root_exp) % cyc, mp);
    std::size_t recombine_begin = c.gates().size();

    // Block i, digit j lands on coefficient (i*mp + j) of the product
    // modulo x^{3m}-1, then folds through x^{2m} = -x^m - 1. Positions
    // at or beyond raw_len cancel to zero and go to pad wires.
    std::size_t pad_len = 2 * m - raw_len;
    DigitRegister pads = E::fresh(c, pad_len);
    bool rneg = neg ^ scale_neg;
    FoldTerm ft[2];
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < 2 * mp; ++j) {
            int k = fold_exponent(i * mp + j, m, ft);
            for (int x = 0; x < k; ++x) {
                std::size_t pos = ft[x].pos;
                bool s = rneg ^ ft[x].flip;
                if (pos < raw_len)
                    E::add(c, dst, pos, prod[i], j, s);
                else
                    E::add(c, pads, pos - raw_len, prod[i], j, s);
            }
        }
    std::size_t recombine_end = c.gates().size();
    (void)recombine_end;
    emit_inverse_range(c, gates_begin, recombine_begin);
}

template <class E>
void conv_rec(CliffordCircuit& c, const Taps& taps, const DigitRegister& src,
              const DigitRegister& dst, bool neg, MulStrategy strategy,
              const MulConfig& cfg) {
    std::size_t lt = taps.size(), ls = src.size();
    if (lt == 0 || ls == 0) throw std::invalid_argument("conv: empty operand");
    if (dst.size() != lt + ls - 1)
        throw std::invalid_argument("conv: output register size mismatch");
    if (taps_all_zero(taps, E::mod)) return;
    std::size_t small = std::min(lt, ls);
    if (strategy == MulStrategy::fft_radix3 && small >= cfg.fft_threshold) {
        conv_fft<E>(c, taps, src, dst, neg, cfg);
        return;
    }
    if (strategy == MulStrategy::karatsuba && small >= cfg.karatsuba_threshold) {
        conv_karatsuba<E>(c, taps, src, dst, neg, cfg);
        return;
    }
    conv_schoolbook<E>(c, taps, src, dst, neg);
}

}  // namespace

void emit_conv_gf2(CliffordCircuit& c, const BitVec& taps,
                   const std::vector<unsigned>& src, const std::vector<unsigned>& dst,
                   MulStrategy strategy, const MulConfig& cfg) {
    if (taps.size() == 0 || src.empty())
        throw std::invalid_argument("emit_conv_gf2: empty operand");
    if (dst.size() != taps.size() + src.size() - 1)
        throw std::invalid_argument("emit_conv_gf2: output width mismatch");
    Taps tv(taps.size());
    for (std::size_t i = 0; i < taps.size(); ++i) tv[i] = taps.get(i) ? 1 : 0;
    DigitRegister s, d;
    s.lo = src;
    s.hi.assign(src.size(), kNoWire);
    d.lo = dst;
    d.hi.assign(dst.size(), kNoWire);
    conv_rec<EngineGf2>(c, tv, s, d, false, strategy, cfg);
}

void emit_conv_z4(CliffordCircuit& c, const std::vector<std::uint8_t>& taps,
                  const DigitRegister& src, const DigitRegister& dst, bool negate,
                  MulStrategy strategy, const MulConfig& cfg) {
    if (taps.empty() || src.size() == 0)
        throw std::invalid_argument("emit_conv_z4: empty operand");
    if (dst.size() != taps.size() + src.size() - 1)
        throw std::invalid_argument("emit_conv_z4: output width mismatch");
    if (src.hi.size() != src.lo.size() || dst.hi.size() != dst.lo.size())
        throw std::invalid_argument("emit_conv_z4: malformed digit register");
    for (unsigned w : dst.hi)
        if (w == kNoWire)
            throw std::invalid_argument("emit_conv_z4: output digits need carry wires");
    conv_rec<EngineZ4>(c, taps, src, dst, negate, strategy, cfg);
}

}  // namespace design2
