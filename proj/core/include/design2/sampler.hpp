#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "design2/bases.hpp"
#include "design2/circuit.hpp"
#include "design2/gf2poly.hpp"
#include "design2/pauli.hpp"
#include "design2/rational.hpp"
#include "design2/sl2.hpp"

namespace design2 {

// The three ensemble realizations: selfdual decomposes the whole element
// over a self-dual normal basis (Clifford-only, admissible n only);
// poly_mod4 and poly_recursive work in the polynomial basis and differ
// in how the quadratic-phase factor is synthesized (mod-4 accumulator
// with CS gates vs the Clifford-only recursion).
enum class Construction { selfdual, poly_mod4, poly_recursive };

const char* to_string(Construction c);
bool parse_construction(const std::string& name, Construction& out);

// Which slice of the sampled circuit realizes which factor of the group
// element, and in which coordinate convention the factor acts.
enum class PartKind { pauli_prefix, selfdual_word, dual_upper, primal_lower, hadamard_swap };

const char* to_string(PartKind k);

struct SamplePart {
    PartKind kind;
    // The factor this slice induces; empty for the Pauli prefix and for
    // the bare Hadamard layer (whose label action is the block swap, not
    // an SL2 element of either basis convention).
    std::optional<Sl2Element> element;
    std::size_t gate_begin = 0;
    std::size_t gate_end = 0;
};

struct SamplerOptions {
    MulStrategy strategy = MulStrategy::fft_radix3;
    // Lower FFT cutoff than the library default so the near-linear path
    // is active from n = 64 up.
    MulConfig mul{.karatsuba_threshold = 32, .fft_threshold = 32};
};

struct DesignSample {
    unsigned n;
    Construction construction;
    Sl2Element M;
    PauliOperator pauli;  // phase-free representative (phase = 0)
    // Pauli layer first, then the factor circuits; ancilla wires are
    // shared across parts (each part restores them to |0>).
    CliffordCircuit circuit;
    std::vector<SamplePart> parts;  // parts[0] is always the Pauli prefix
    BasisSpec basis;                // self-dual basis, or the polynomial basis
    std::uint64_t entropy_bits_consumed;
    std::uint64_t seed;
};

// The basis a construction realizes its factors in.
BasisSpec construction_basis(unsigned n, Construction construction,
                             const SamplerOptions& opts = {});

// Deterministic circuit assembly for a fixed (M, P); sample() and
// enumerate_ensemble() both reduce to this.
DesignSample assemble_sample(const BasisSpec& basis, Construction construction,
                             const Sl2Element& M, const PauliOperator& pauli,
                             const SamplerOptions& opts = {}, std::uint64_t seed = 0,
                             std::uint64_t entropy_bits = 0);

// Draw M uniformly from SL2(GF(2^n)) and a uniform phase-free Pauli
// prefix (2n bits), then assemble. Same seed, same bytes.
DesignSample sample(unsigned n, Construction construction, std::uint64_t seed,
                    const SamplerOptions& opts = {});

// Every (M, P) pair exactly once: (2^(3n) - 2^n) * 2^(2n) samples, M in
// decode_index order, P in (a | b << n) order. Capped at n <= 2.
std::vector<DesignSample> enumerate_ensemble(unsigned n, Construction construction,
                                             const SamplerOptions& opts = {});

// The circuit with the Pauli prefix stripped.
CliffordCircuit u_part(const DesignSample& s);

// Exact per-element transition masses of the two triangular mixing
// procedures on the nontrivial Pauli classes, and of their mixture.
// Classes index the quotient labels X^a Z^b: 0 = first row (b = 0,
// a != 0), 1 = first column (a = 0, b != 0), 2 = the rest. Entry [s][t]
// is the probability mass landing on EACH element of class t when
// starting anywhere in class s. Procedure A is upper-triangular mixing
// followed by column mixing; Procedure B is the Hadamard transposition
// followed by lower-triangular mixing. The weights come from the exact
// group cardinalities (the alpha = 0 slice of SL2), and the mixture is
// uniform at 1/(N^2 - 1) exactly.
struct PauliClassMixture {
    unsigned n = 0;
    std::array<std::int64_t, 3> class_sizes{};  // N-1, N-1, (N-1)^2
    std::array<std::array<Rational, 3>, 3> procedure_a;
    std::array<std::array<Rational, 3>, 3> procedure_b;
    std::array<std::array<Rational, 3>, 3> mixture;
    Rational weight_a, weight_b;  // N/(N+1), 1/(N+1)
    bool uniform = false;         // mixture == 1/(N^2-1) in every cell
};

PauliClassMixture ab_mixture_chain(unsigned n);  // n in [1, 6]

}  // namespace design2
