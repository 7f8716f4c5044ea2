#pragma once

#include <vector>

#include "design2/circuit.hpp"
#include "design2/pauli.hpp"

namespace design2 {

// Conjugation action of a Clifford circuit on the 2W Pauli generators
// X_0..X_{W-1}, Z_0..Z_{W-1}, with exact i^k phase tracking in the
// X-then-Z normal form. Stored as per-wire bit planes indexed by
// generator so gate updates are word-parallel across all generators.
class SymplecticTableau {
public:
    explicit SymplecticTableau(unsigned wires);

    unsigned wires() const { return wires_; }
    void apply(const Gate& g);  // rejects CS
    void apply(const CliffordCircuit& c);

    // gen < wires: image of X_gen; else image of Z_{gen - wires}.
    PauliOperator image(std::size_t gen) const;
    // Image of an arbitrary Pauli (conjugation is a homomorphism).
    PauliOperator image_of(const PauliOperator& p) const;

    bool preserves_symplectic_form() const;

private:
    unsigned wires_;
    std::size_t gens_;
    std::vector<BitVec> cx_;  // cx_[q] bit g: image of generator g has X on wire q
    std::vector<BitVec> cz_;
    BitVec lo_, hi_;  // phase exponent bits per generator

    void phase_add1(const BitVec& m);
    void phase_add2(const BitVec& m) { hi_.xor_with(m); }
    void phase_add3(const BitVec& m);
};

}  // namespace design2
