#pragma once

#include <cstdint>
#include <vector>

#include "design2/bases.hpp"
#include "design2/bitvec.hpp"
#include "design2/circuit.hpp"
#include "design2/field.hpp"
#include "design2/gf2poly.hpp"
#include "design2/pauli.hpp"

namespace design2 {

enum class CnotNetworkMode { xor_into_targets };

// CNOT network computing t ^= A s. Wires [0, cols) hold the source
// vector s, wires [cols, cols + rows) the targets t, one CNOT per set
// bit of A.
CliffordCircuit cnot_network(const BitMatrix& A, CnotNetworkMode mode);

enum class LDirection { forward, inverse };

// In-place CNOT circuit for v := L_k v (forward) or v := L_k^{-1} v
// (inverse), acting on k wires. Matches l_network(k).
CliffordCircuit synth_l_conversion(unsigned k, LDirection direction);

// |a> -> |r a> on the n data wires, where a is read in the coordinates
// of `basis`. CNOT/SWAP only; every ancilla is restored. Built as two
// out-of-place multiplier cores (by r and r^{-1}) plus a swap layer.
CliffordCircuit synth_mr(const BasisSpec& basis, const FieldElement& r,
                         MulStrategy strategy = MulStrategy::schoolbook,
                         const MulConfig& cfg = MulConfig{});

// Diagonal phase i^(c^T W c mod 4) on the computational label c, for a
// symmetric matrix W. Three interchangeable constructions.
CliffordCircuit synth_vw_generic(const BitMatrix& W);

// Hankel W only: accumulates e = W c in base-4 digit ancillas through a
// reversible convolution network, injects the phase with one CS and one
// CZ per data wire, then uncomputes. Not Clifford-only.
CliffordCircuit synth_vw_mod4(const BitMatrix& W,
                              MulStrategy strategy = MulStrategy::schoolbook,
                              const MulConfig& cfg = MulConfig{});

// Hankel W only: Clifford-only divide and conquer. The off-diagonal
// block contributes (-1)^(c1^T A c2) via a mod-2 convolution into
// ancillas and a CZ layer; the two diagonal blocks recurse.
CliffordCircuit synth_vw_recursive(const BitMatrix& W,
                                   MulStrategy strategy = MulStrategy::schoolbook,
                                   const MulConfig& cfg = MulConfig{});

enum class TransversalKind { H_all, S_all };

CliffordCircuit synth_transversal(TransversalKind kind, unsigned n);

// Phase-free Pauli layer: per wire Y if both bits of (a, b) are set,
// else X or Z for a single set bit.
CliffordCircuit synth_pauli(const PauliOperator& p);

// --- reversible convolution networks ------------------------------------

constexpr unsigned kNoWire = ~0u;

// Base-4 digit register: digit i has value lo[i] + 2 hi[i]. An entry
// hi[i] == kNoWire denotes a bit-valued digit (used for sources only).
struct DigitRegister {
    std::vector<unsigned> lo;
    std::vector<unsigned> hi;

    std::size_t size() const { return lo.size(); }
};

// dst[i + j] ^= taps[i] & src[j] over all pairs (raw GF(2) convolution
// with classical taps). dst must hold taps.size() + src.size() - 1
// wires. Work ancillas are allocated on c and restored.
void emit_conv_gf2(CliffordCircuit& c, const BitVec& taps,
                   const std::vector<unsigned>& src,
                   const std::vector<unsigned>& dst, MulStrategy strategy,
                   const MulConfig& cfg = MulConfig{});

// dst[i + j] += s * taps[i] * src[j] (mod 4) over all pairs, with
// s = -1 when negate is set. taps entries are mod-4 constants; dst
// digits need both wires; src digits may be bit-valued.
void emit_conv_z4(CliffordCircuit& c, const std::vector<std::uint8_t>& taps,
                  const DigitRegister& src, const DigitRegister& dst,
                  bool negate, MulStrategy strategy,
                  const MulConfig& cfg = MulConfig{});

// Appends the inverse of the gate range [begin, end) of c's own gate
// list, in reverse order. The workhorse behind every uncompute step.
void emit_inverse_range(CliffordCircuit& c, std::size_t begin, std::size_t end);

// Grows the ancilla region by k wires and returns the first new index.
unsigned alloc_wires(CliffordCircuit& c, unsigned k);

}  // namespace design2
