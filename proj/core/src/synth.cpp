#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "design2/synth.hpp"

namespace design2 {

namespace {

std::vector<unsigned> wire_range(unsigned base, unsigned count) {
    std::vector<unsigned> w(count);
    std::iota(w.begin(), w.end(), base);
    return w;
}

// Defining vector of a Hankel matrix, W(j,k) = w[j+k]; rejects anything
// else (such matrices are automatically symmetric).
BitVec hankel_vector(const BitMatrix& W) {
    unsigned n = W.rows();
    if (n == 0 || W.cols() != n)
        throw std::invalid_argument("hankel_vector: square nonempty matrix required");
    BitVec w(2 * n - 1);
    for (unsigned s = 0; s < 2 * n - 1; ++s) {
        bool v = s < n ? W.get(0, s) : W.get(s - n + 1, n - 1);
        if (v) w.set(s, true);
    }
    for (unsigned j = 0; j < n; ++j)
        for (unsigned k = 0; k < n; ++k)
            if (W.get(j, k) != w.get(j + k))
                throw std::invalid_argument("matrix is not Hankel");
    return w;
}

void emit_ccx_local(CliffordCircuit& c, unsigned a, unsigned b, unsigned t) {
    c.add(GateKind::H, t);
    c.add(GateKind::CS, a, t);
    c.add(GateKind::CS, b, t);
    c.add(GateKind::CNOT, a, b);
    c.add(GateKind::CS, b, t);
    c.add(GateKind::CZ, b, t);
    c.add(GateKind::CNOT, a, b);
    c.add(GateKind::H, t);
}

// dst ^= coords(r * from_coords(src)) for a polynomial basis: raw
// convolution by the coordinates of r, then each product wire folds
// into dst along x^p mod Q.
void mr_core_poly(CliffordCircuit& c, const BasisSpec& basis, const FieldElement& r,
                  const std::vector<unsigned>& src, const std::vector<unsigned>& dst,
                  MulStrategy strategy, const MulConfig& cfg) {
    unsigned n = basis.n();
    BitVec taps = basis.to_coords(r);
    std::vector<unsigned> raw = wire_range(alloc_wires(c, 2 * n - 1), 2 * n - 1);
    std::size_t b0 = c.gates().size();
    emit_conv_gf2(c, taps, src, raw, strategy, cfg);
    std::size_t b1 = c.gates().size();
    const BitPoly& q = basis.ctx()->modulus();
    for (unsigned p = 0; p < 2 * n - 1; ++p) {
        if (p < n) {
            c.add(GateKind::CNOT, raw[p], dst[p]);
            continue;
        }
        BitPoly rem = poly_mod(BitPoly::monomial(p), q);
        const BitVec& bits = rem.bits();
        for (unsigned k = 0; k < bits.size(); ++k)
            if (bits.get(k)) c.add(GateKind::CNOT, raw[p], dst[k]);
    }
    emit_inverse_range(c, b0, b1);
}

// dst ^= coords(r * from_coords(src)) for the self-dual basis: move to
// the power-spanning coordinates with L_{n+1}^{-1}, convolve by r there,
// convert the 2n+1 product coefficients back with L_{2n+1}, fold the
// wrap-around subscripts, and copy out in Frobenius order.
void mr_core_selfdual(CliffordCircuit& c, const BasisSpec& basis,
                      const FieldElement& r, const std::vector<unsigned>& src,
                      const std::vector<unsigned>& dst, MulStrategy strategy,
                      const MulConfig& cfg) {
    unsigned n = basis.n();
    const std::vector<unsigned>& ord = basis.exponent_order();
    BitVec rc = basis.to_coords(r);
    BitVec s(n + 1);
    for (unsigned i = 0; i < n; ++i)
        if (rc.get(i)) s.set(ord[i], true);
    BitVec rt = l_inverse_apply(s);

    unsigned anc0 = alloc_wires(c, 1);
    std::vector<unsigned> P(n + 1);
    P[0] = anc0;
    for (unsigned i = 0; i < n; ++i) P[ord[i]] = src[i];
    std::vector<unsigned> raw = wire_range(alloc_wires(c, 2 * n + 1), 2 * n + 1);

    std::size_t b0 = c.gates().size();
    auto net1 = l_network(n + 1);
    for (auto it = net1.rbegin(); it != net1.rend(); ++it)
        c.add(GateKind::CNOT, P[it->first], P[it->second]);
    emit_conv_gf2(c, rt, P, raw, strategy, cfg);
    for (auto& [ctrl, tgt] : l_network(2 * n + 1))
        c.add(GateKind::CNOT, raw[ctrl], raw[tgt]);
    for (unsigned j = n + 1; j <= 2 * n; ++j)
        c.add(GateKind::CNOT, raw[j], raw[2 * n + 1 - j]);
    std::size_t b1 = c.gates().size();
    for (unsigned i = 0; i < n; ++i) c.add(GateKind::CNOT, raw[ord[i]], dst[i]);
    emit_inverse_range(c, b0, b1);
}

// Dense fallback: one CNOT per set bit of the multiplication matrix.
void mr_core_dense(CliffordCircuit& c, const BasisSpec& basis, const FieldElement& r,
                   const std::vector<unsigned>& src, const std::vector<unsigned>& dst) {
    BitMatrix M = mult_matrix(basis, r);
    for (unsigned i = 0; i < M.rows(); ++i)
        for (unsigned j = 0; j < M.cols(); ++j)
            if (M.get(i, j)) c.add(GateKind::CNOT, src[j], dst[i]);
}

void mr_core(CliffordCircuit& c, const BasisSpec& basis, const FieldElement& r,
             const std::vector<unsigned>& src, const std::vector<unsigned>& dst,
             MulStrategy strategy, const MulConfig& cfg) {
    switch (basis.kind()) {
        case BasisKind::polynomial:
            mr_core_poly(c, basis, r, src, dst, strategy, cfg);
            break;
        case BasisKind::selfdual_gauss:
            mr_core_selfdual(c, basis, r, src, dst, strategy, cfg);
            break;
        case BasisKind::dual_of_polynomial:
            mr_core_dense(c, basis, r, src, dst);
            break;
    }
}

// Cross-block contribution of the recursive V_W construction on the
// wire window [c1 | c2]: (-1)^(c1^T A c2) with A(j,k) = w[off + h + j + k].
void vw_rec(CliffordCircuit& c, const BitVec& w, unsigned off,
            const std::vector<unsigned>& wires, MulStrategy strategy,
            const MulConfig& cfg) {
    std::size_t len = wires.size();
    if (len == 0) return;
    if (len == 1) {
        if (w.get(off)) c.add(GateKind::S, wires[0]);
        return;
    }
    std::size_t h = len / 2;
    std::vector<unsigned> c1(wires.begin(), wires.begin() + h);
    std::vector<unsigned> c2(wires.begin() + h, wires.end());
    BitVec taps(len - 1);
    for (unsigned i = 0; i + 1 < len; ++i)
        if (w.get(off + h + i)) taps.set(i, true);
    if (taps.any()) {
        if (strategy == MulStrategy::schoolbook) {
            std::vector<unsigned> d = wire_range(alloc_wires(c, h), h);
            std::size_t b0 = c.gates().size();
            for (std::size_t j = 0; j < h; ++j)
                for (std::size_t k = 0; k < len - h; ++k)
                    if (taps.get(j + k)) c.add(GateKind::CNOT, c2[k], d[j]);
            std::size_t b1 = c.gates().size();
            for (std::size_t j = 0; j < h; ++j) {
                bool row = false;
                for (std::size_t k = 0; k < len - h && !row; ++k) row = taps.get(j + k);
                if (row) c.add(GateKind::CZ, c1[j], d[j]);
            }
            emit_inverse_range(c, b0, b1);
        } else {
            BitVec rev(len - 1);
            for (unsigned i = 0; i + 1 < len; ++i)
                if (taps.get(len - 2 - i)) rev.set(i, true);
            std::size_t raw_len = (len - 1) + (len - h) - 1;
            std::vector<unsigned> raw =
                wire_range(alloc_wires(c, raw_len), raw_len);
            std::size_t b0 = c.gates().size();
            emit_conv_gf2(c, rev, c2, raw, strategy, cfg);
            std::size_t b1 = c.gates().size();
            for (std::size_t j = 0; j < h; ++j)
                c.add(GateKind::CZ, c1[j], raw[len - 2 - j]);
            emit_inverse_range(c, b0, b1);
        }
    }
    vw_rec(c, w, off, c1, strategy, cfg);
    vw_rec(c, w, off + 2 * static_cast<unsigned>(h), c2, strategy, cfg);
}

}  // namespace

CliffordCircuit cnot_network(const BitMatrix& A, CnotNetworkMode mode) {
    (void)mode;
    unsigned rows = A.rows(), cols = A.cols();
    CliffordCircuit c(cols + rows, 0);
    for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < cols; ++j)
            if (A.get(i, j)) c.add(GateKind::CNOT, j, cols + i);
    return c;
}

CliffordCircuit synth_l_conversion(unsigned k, LDirection direction) {
    CliffordCircuit c(k, 0);
    auto net = l_network(k);
    if (direction == LDirection::forward) {
        for (auto& [ctrl, tgt] : net) c.add(GateKind::CNOT, ctrl, tgt);
    } else {
        for (auto it = net.rbegin(); it != net.rend(); ++it)
            c.add(GateKind::CNOT, it->first, it->second);
    }
    return c;
}

CliffordCircuit synth_mr(const BasisSpec& basis, const FieldElement& r,
                         MulStrategy strategy, const MulConfig& cfg) {
    if (r.is_zero()) throw std::invalid_argument("synth_mr: r must be invertible");
    unsigned n = basis.n();
    CliffordCircuit c(n, 0);
    std::vector<unsigned> data = wire_range(0, n);
    std::vector<unsigned> t = wire_range(alloc_wires(c, n), n);
    mr_core(c, basis, r, data, t, strategy, cfg);
    mr_core(c, basis, field_inv(r), t, data, strategy, cfg);
    for (unsigned i = 0; i < n; ++i) c.add(GateKind::SWAP, data[i], t[i]);
    return c;
}

CliffordCircuit synth_vw_generic(const BitMatrix& W) {
    unsigned n = W.rows();
    if (n == 0 || W.cols() != n || !W.is_symmetric())
        throw std::invalid_argument("synth_vw_generic: symmetric matrix required");
    CliffordCircuit c(n, 0);
    for (unsigned j = 0; j < n; ++j)
        if (W.get(j, j)) c.add(GateKind::S, j);
    for (unsigned j = 0; j < n; ++j)
        for (unsigned k = j + 1; k < n; ++k)
            if (W.get(j, k)) c.add(GateKind::CZ, j, k);
    return c;
}

CliffordCircuit synth_vw_mod4(const BitMatrix& W, MulStrategy strategy,
                              const MulConfig& cfg) {
    BitVec w = hankel_vector(W);
    unsigned n = W.rows();
    CliffordCircuit c(n, 0);
    if (!w.any()) return c;
    if (strategy == MulStrategy::schoolbook) {
        unsigned base = alloc_wires(c, 2 * n);
        std::size_t b0 = c.gates().size();
        for (unsigned j = 0; j < n; ++j) {
            unsigned lo = base + 2 * j, hi = base + 2 * j + 1;
            for (unsigned k = 0; k < n; ++k)
                if (W.get(j, k)) {
                    emit_ccx_local(c, k, lo, hi);
                    c.add(GateKind::CNOT, k, lo);
                }
        }
        std::size_t b1 = c.gates().size();
        for (unsigned j = 0; j < n; ++j) {
            c.add(GateKind::CS, j, base + 2 * j);
            c.add(GateKind::CZ, j, base + 2 * j + 1);
        }
        emit_inverse_range(c, b0, b1);
        return c;
    }
    std::vector<std::uint8_t> taps(2 * n - 1, 0);
    for (unsigned i = 0; i < 2 * n - 1; ++i)
        if (w.get(2 * n - 2 - i)) taps[i] = 1;
    DigitRegister src;
    src.lo = wire_range(0, n);
    src.hi.assign(n, kNoWire);
    std::size_t digits = (2 * n - 1) + n - 1;
    unsigned base = alloc_wires(c, static_cast<unsigned>(2 * digits));
    DigitRegister dst;
    for (std::size_t i = 0; i < digits; ++i) {
        dst.lo.push_back(base + static_cast<unsigned>(2 * i));
        dst.hi.push_back(base + static_cast<unsigned>(2 * i + 1));
    }
    std::size_t b0 = c.gates().size();
    emit_conv_z4(c, taps, src, dst, false, strategy, cfg);
    std::size_t b1 = c.gates().size();
    for (unsigned j = 0; j < n; ++j) {
        std::size_t digit = 2 * n - 2 - j;
        c.add(GateKind::CS, j, dst.lo[digit]);
        c.add(GateKind::CZ, j, dst.hi[digit]);
    }
    emit_inverse_range(c, b0, b1);
    return c;
}

CliffordCircuit synth_vw_recursive(const BitMatrix& W, MulStrategy strategy,
                                   const MulConfig& cfg) {
    BitVec w = hankel_vector(W);
    unsigned n = W.rows();
    CliffordCircuit c(n, 0);
    vw_rec(c, w, 0, wire_range(0, n), strategy, cfg);
    return c;
}

CliffordCircuit synth_transversal(TransversalKind kind, unsigned n) {
    CliffordCircuit c(n, 0);
    for (unsigned i = 0; i < n; ++i)
        c.add(kind == TransversalKind::H_all ? GateKind::H : GateKind::S, i);
    return c;
}

CliffordCircuit synth_pauli(const PauliOperator& p) {
    unsigned n = static_cast<unsigned>(p.wires());
    CliffordCircuit c(n, 0);
    for (unsigned i = 0; i < n; ++i) {
        bool x = p.a.get(i), z = p.b.get(i);
        if (x && z)
            c.add(GateKind::Y, i);
        else if (x)
            c.add(GateKind::X, i);
        else if (z)
            c.add(GateKind::Z, i);
    }
    return c;
}

}  // namespace design2
