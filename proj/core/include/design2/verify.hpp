#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "design2/bases.hpp"
#include "design2/bitvec.hpp"
#include "design2/circuit.hpp"
#include "design2/exact_sim.hpp"
#include "design2/pauli.hpp"
#include "design2/rational.hpp"
#include "design2/sampler.hpp"
#include "design2/sl2.hpp"

namespace design2 {

struct InducesReport {
    bool pass = false;
    // Symplectic form preserved, ancillas restored, no leakage of the
    // data action onto ancilla wires.
    bool structural_ok = false;
    std::string failure;  // empty iff pass
    // i-exponent of each generator image (X_0..X_{n-1}, Z_0..Z_{n-1});
    // recorded for inspection, never constrained.
    std::vector<unsigned> phases;
};

// Does the Clifford circuit conjugate X^a Z^b-labels on its data wires
// by M, in the coordinate convention of `basis` (X labels in primal
// coordinates, Z labels in dual coordinates)? Ancillas must start and
// end in |0> and contribute nothing to the data action.
InducesReport check_induces(const CliffordCircuit& circuit, const Sl2Element& M,
                            const BasisSpec& basis);

// Same checks against an arbitrary expected label-bit action instead of
// a single SL2 element's.
InducesReport check_action(const CliffordCircuit& circuit, const BitMatrix& expect);

// Expected action on raw (u | v) label bits implied by M in the basis
// convention: u' = M_alpha u + M_gamma W^{-1} v,
// v' = W M_beta u + W M_delta W^{-1} v. Returned as the 2n x 2n block
// matrix over GF(2).
BitMatrix induced_bit_action(const Sl2Element& M, const BasisSpec& basis);

// Label-bit action of the whole sampled U-part for element M under a
// construction. The self-dual construction induces M outright; the
// polynomial ones compose the dual-convention upper factor (or the
// Hadamard block swap when alpha = 0) with the primal lower factor, so
// the composite is generally NOT the induced action of M in any single
// basis.
BitMatrix expected_u_action(const Sl2Element& M, Construction construction,
                            const BasisSpec& basis);

// U p U^dagger for a dense unitary; throws std::runtime_error when the
// result is not exactly i^k X^a Z^b (every entry is verified).
PauliOperator conjugate_pauli_dense(const DenseUnitary& u, const PauliOperator& p);

// Conjugation action of a circuit's data-wire unitary on Pauli labels,
// with exact i^k phases. Built from the tableau for Clifford-only
// circuits and from the exact simulator otherwise (small widths only).
struct PauliAction {
    unsigned n = 0;
    // Images of X_0..X_{n-1} then Z_0..Z_{n-1}, restricted to data wires.
    std::vector<PauliOperator> images;

    PauliOperator image(const PauliOperator& p) const;
    // Columns = (a' | b') label bits of the generator images.
    BitMatrix bit_action() const;

    // Quotient labels packed as a_bits | (b_bits << n); requires n <= 15.
    std::uint32_t label_image(std::uint32_t label) const;
    // Image of the Hermitian representative i^(a.b) X^a Z^b as
    // (label', sign); the sign is always +1 or -1.
    std::pair<std::uint32_t, int> hermitian_image(std::uint32_t label) const;
};

PauliAction pauli_action(const CliffordCircuit& c, std::size_t max_support = 256);

// Image distribution of every nontrivial quotient Pauli under the
// conjugation actions of an exhaustive ensemble (uniform weights);
// passes iff every distribution is exactly uniform over the 4^n - 1
// nontrivial labels.
struct MixingReport {
    bool pass = false;
    unsigned n = 0;
    std::size_t ensemble_size = 0;
    // counts[l-1][l'-1] over nontrivial quotient labels.
    std::vector<std::vector<std::size_t>> counts;
    std::string failure;
};

MixingReport pauli_mixing_check(const std::vector<CliffordCircuit>& u_parts, unsigned n);

// Ensemble-averaged image of R_a (x) R_b over Hermitian representatives
// R_l = i^(a.b) X^a Z^b, as exact rationals count/ensemble_size.
struct TwirlTable {
    unsigned n = 0;
    std::size_t ensemble_size = 0;
    // counts[in][out] with in/out = la * 4^n + lb over quotient pairs.
    std::vector<std::vector<std::int64_t>> counts;

    Rational coefficient(std::size_t in_pair, std::size_t out_pair) const;
};

struct TwirlReport {
    bool pass = false;
    unsigned n = 0;
    // The surviving coefficient on every nontrivial diagonal cell,
    // exactly 1/(4^n - 1) when passing.
    Rational diagonal_coefficient;
    std::string failure;
    TwirlTable table;
};

// Exact bilateral-twirl table of the full ensemble (Pauli prefixes
// included): off-diagonal pairs must average to exactly zero and every
// nontrivial diagonal pair to the uniform diagonal combination.
TwirlReport bilateral_twirl_check(const std::vector<CliffordCircuit>& ensemble,
                                  unsigned n);

// Sum p_i p_j |Tr(U_i^dagger U_j)|^4 with uniform weights; traces are
// exact, the final magnitude uses floating point.
double frame_potential(const std::vector<DenseUnitary>& ensemble);

// The 24 single-qubit Clifford unitaries (modulo global phase),
// generated by breadth-first closure over {H, S}.
std::vector<DenseUnitary> one_qubit_clifford_group();

// Per-part induced-action verification of a sampled circuit: each factor
// slice must induce its recorded element in its declared basis, and the
// product of the factors' label actions must equal the whole circuit's
// action. Non-Clifford slices fall back to the exact simulator and are
// reported as skipped when too wide for it.
struct PartCheck {
    PartKind kind;
    bool checked = false;
    bool pass = false;
    std::string method;  // "structural", "tableau", "dense", "skipped"
    std::string failure;
};

struct SampleReport {
    bool pass = false;  // no checked item failed
    bool all_checked = false;
    bool composition_checked = false;
    bool composition_ok = false;
    std::vector<PartCheck> parts;
    std::string failure;
};

SampleReport verify_sample(const DesignSample& s, std::size_t max_support = 256);

}  // namespace design2
