#pragma once

#include <map>
#include <vector>

#include "design2/bitvec.hpp"
#include "design2/circuit.hpp"
#include "design2/cyc8.hpp"
#include "design2/pauli.hpp"

namespace design2 {

// Exact unitary on `wires` qubits: entries / sqrt(2)^scale, entries in
// Z[zeta_8]. Canonical form after reduce(): scale = 0 or some entry is
// not divisible by sqrt(2).
class DenseUnitary {
public:
    static DenseUnitary identity(unsigned wires);

    unsigned wires() const { return wires_; }
    std::size_t dim() const { return dim_; }
    int scale() const { return scale_; }
    const Cyc8& at(std::size_t r, std::size_t c) const { return m_[r * dim_ + c]; }
    Cyc8& at(std::size_t r, std::size_t c) { return m_[r * dim_ + c]; }

    void apply_gate(const Gate& g);  // left-multiplies by the gate
    void apply(const CliffordCircuit& c);

    DenseUnitary mul(const DenseUnitary& rhs) const;  // this * rhs
    DenseUnitary adjoint() const;
    void scale_up(int extra);  // multiply entries by sqrt(2)^extra
    // Reinterpret the raw entries as entries / sqrt(2)^s.
    void set_scale(int s) { scale_ = s; }
    void reduce();

    bool equals(const DenseUnitary& other) const;  // scale-aware comparison

private:
    DenseUnitary(unsigned wires, std::size_t dim) : wires_(wires), dim_(dim), m_(dim * dim) {}
    unsigned wires_ = 0;
    std::size_t dim_ = 0;
    int scale_ = 0;
    std::vector<Cyc8> m_;
};

// Full matrix of the circuit (ancillas included as plain wires starting
// from |0> is NOT assumed here). Width capped at 12 wires.
DenseUnitary dense_simulate(const CliffordCircuit& c);

// Dense form of i^phase X^a Z^b.
DenseUnitary pauli_dense(const PauliOperator& p);

// Exact state vector, same scaling convention as DenseUnitary.
class DenseState {
public:
    DenseState(unsigned wires, const BitVec& label);

    unsigned wires() const { return wires_; }
    int scale() const { return scale_; }
    const Cyc8& amp(std::size_t idx) const { return v_[idx]; }

    void apply_gate(const Gate& g);
    void apply(const CliffordCircuit& c);
    void reduce();

private:
    unsigned wires_ = 0;
    int scale_ = 0;
    std::vector<Cyc8> v_;
};

struct SupportOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State vector stored sparsely over computational basis labels; scales to
// any wire count as long as the support stays small (diagonal gates,
// permutations, and transient single-wire H splits).
class SparseState {
public:
    SparseState(unsigned wires, const BitVec& label, std::size_t max_support);

    unsigned wires() const { return wires_; }
    int scale() const { return scale_; }
    std::size_t support() const { return amp_.size(); }
    const std::map<std::vector<std::uint64_t>, Cyc8>& amplitudes() const { return amp_; }
    Cyc8 amplitude(const BitVec& label) const;

    void apply_gate(const Gate& g);  // throws SupportOverflow past the cap
    void apply(const CliffordCircuit& c);

private:
    unsigned wires_ = 0;
    int scale_ = 0;
    std::size_t max_support_ = 0;
    std::map<std::vector<std::uint64_t>, Cyc8> amp_;
    void reduce();
};

// Effective unitary on the data wires of a circuit whose ancillas start
// in |0> and are restored. Verifies exactly that no amplitude leaks onto
// the ancillas; throws std::runtime_error otherwise. Uses the sparse
// simulator, falling back to dense when the support overflows.
DenseUnitary code_space_unitary(const CliffordCircuit& c, std::size_t max_support = 256);

}  // namespace design2
