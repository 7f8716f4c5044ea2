#include "design2/tableau.hpp"

#include <stdexcept>
#include <utility>

namespace design2 {

SymplecticTableau::SymplecticTableau(unsigned wires)
    : wires_(wires), gens_(2 * std::size_t(wires)), lo_(gens_), hi_(gens_) {
    cx_.assign(wires, BitVec(gens_));
    cz_.assign(wires, BitVec(gens_));
    for (unsigned q = 0; q < wires; ++q) {
        cx_[q].set(q, true);
        cz_[q].set(wires + q, true);
    }
}

void SymplecticTableau::phase_add1(const BitVec& m) {
    BitVec carry = bit_and(lo_, m);
    lo_.xor_with(m);
    hi_.xor_with(carry);
}

void SymplecticTableau::phase_add3(const BitVec& m) {
    phase_add1(m);
    phase_add2(m);
}

void SymplecticTableau::apply(const Gate& g) {
    switch (g.kind) {
        case GateKind::H:
            phase_add2(bit_and(cx_[g.a], cz_[g.a]));
            std::swap(cx_[g.a], cz_[g.a]);
            break;
        case GateKind::S:
            phase_add1(cx_[g.a]);
            cz_[g.a].xor_with(cx_[g.a]);
            break;
        case GateKind::Sdg:
            phase_add3(cx_[g.a]);
            cz_[g.a].xor_with(cx_[g.a]);
            break;
        case GateKind::X:
            phase_add2(cz_[g.a]);
            break;
        case GateKind::Z:
            phase_add2(cx_[g.a]);
            break;
        case GateKind::Y:
            phase_add2(bit_xor(cx_[g.a], cz_[g.a]));
            break;
        case GateKind::CNOT:
            cx_[g.b].xor_with(cx_[g.a]);
            cz_[g.a].xor_with(cz_[g.b]);
            break;
        case GateKind::CZ:
            phase_add2(bit_and(cx_[g.a], cx_[g.b]));
            cz_[g.a].xor_with(cx_[g.b]);
            cz_[g.b].xor_with(cx_[g.a]);
            break;
        case GateKind::SWAP:
            std::swap(cx_[g.a], cx_[g.b]);
            std::swap(cz_[g.a], cz_[g.b]);
            break;
        case GateKind::CS:
            throw std::invalid_argument("SymplecticTableau: CS is not Clifford");
    }
}

void SymplecticTableau::apply(const CliffordCircuit& c) {
    if (c.total_wires() > wires_)
        throw std::invalid_argument("SymplecticTableau: circuit is wider than the tableau");
    for (const Gate& g : c.gates()) apply(g);
}

PauliOperator SymplecticTableau::image(std::size_t gen) const {
    PauliOperator p = PauliOperator::identity(wires_);
    for (unsigned q = 0; q < wires_; ++q) {
        if (cx_[q].get(gen)) p.a.set(q, true);
        if (cz_[q].get(gen)) p.b.set(q, true);
    }
    p.phase = (unsigned(lo_.get(gen)) + 2 * unsigned(hi_.get(gen))) & 3;
    return p;
}

PauliOperator SymplecticTableau::image_of(const PauliOperator& p) const {
    if (p.wires() != wires_)
        throw std::invalid_argument("SymplecticTableau: operand width mismatch");
    PauliOperator acc = PauliOperator::identity(wires_);
    acc.phase = p.phase;
    for (unsigned q = 0; q < wires_; ++q)
        if (p.a.get(q)) acc = pauli_mul(acc, image(q));
    for (unsigned q = 0; q < wires_; ++q)
        if (p.b.get(q)) acc = pauli_mul(acc, image(wires_ + q));
    return acc;
}

bool SymplecticTableau::preserves_symplectic_form() const {
    std::vector<PauliOperator> im(gens_);
    for (std::size_t g = 0; g < gens_; ++g) im[g] = image(g);
    for (std::size_t g = 0; g < gens_; ++g)
        for (std::size_t h = g + 1; h < gens_; ++h) {
            bool expect = (h == g + wires_);  // X_q pairs with Z_q only
            if (symplectic_form(im[g], im[h]) != expect) return false;
        }
    return true;
}

}  // namespace design2
