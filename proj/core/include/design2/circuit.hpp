#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace design2 {

// CS is the only non-Clifford kind (controlled-S); everything else is in
// the Clifford group. Pauli and Sdg are included so phase fixups and
// Pauli prefixes are single gates.
enum class GateKind { H, S, Sdg, X, Y, Z, CNOT, CZ, SWAP, CS };

bool is_two_qubit(GateKind k);
const char* to_string(GateKind k);
bool parse_gate_kind(const std::string& name, GateKind& out);

struct Gate {
    GateKind kind;
    // Single wire in a; for CNOT and CS, a is the control and b the
    // target; CZ and SWAP are symmetric in (a, b).
    unsigned a = 0;
    unsigned b = 0;

    bool operator==(const Gate&) const = default;
};

// Wires [0, n_data) are data, [n_data, n_data + n_ancilla) are ancillas
// (initially |0> and, when ancilla_restored, returned to |0>).
class CliffordCircuit {
public:
    CliffordCircuit() = default;
    CliffordCircuit(unsigned n_data, unsigned n_ancilla)
        : n_data_(n_data), n_ancilla_(n_ancilla) {}

    unsigned n_data() const { return n_data_; }
    unsigned n_ancilla() const { return n_ancilla_; }
    unsigned total_wires() const { return n_data_ + n_ancilla_; }
    const std::vector<Gate>& gates() const { return gates_; }
    bool clifford_only() const { return clifford_only_; }
    bool ancilla_restored() const { return ancilla_restored_; }

    void set_ancilla_restored(bool v) { ancilla_restored_ = v; }
    void set_clifford_only(bool v) { clifford_only_ = v; }
    // Grow the ancilla region (e.g. before composing sub-circuits).
    void grow_ancilla(unsigned n_ancilla);

    void add(GateKind kind, unsigned wire);
    void add(GateKind kind, unsigned a, unsigned b);
    void add(const Gate& g);

    bool operator==(const CliffordCircuit&) const = default;

private:
    unsigned n_data_ = 0;
    unsigned n_ancilla_ = 0;
    bool clifford_only_ = true;
    bool ancilla_restored_ = true;
    std::vector<Gate> gates_;
};

struct CircuitMetrics {
    std::size_t gate_count = 0;
    std::size_t depth = 0;
    unsigned ancilla_count = 0;
};

// Depth by left-greedy layering: a gate lands one past the deepest layer
// currently touching any of its wires.
CircuitMetrics metrics(const CliffordCircuit& c);

// Gates of a then gates of b; same n_data required, ancillas unioned,
// flags AND-ed.
CliffordCircuit compose(const CliffordCircuit& a, const CliffordCircuit& b);

// Reverse gate order with each gate inverted (S <-> Sdg; CS inverts to
// CS followed by CZ; the rest are involutions).
CliffordCircuit invert(const CliffordCircuit& c);

// Text format:
//   design2-circuit v1
//   n_data <int> n_ancilla <int> clifford_only <0|1> ancilla_restored <0|1>
//   <KIND> <wire>[ <wire>]
// Lines starting with '#' are comments.
std::string serialize(const CliffordCircuit& c);
// Throws std::invalid_argument with the offending line number.
CliffordCircuit parse_circuit(const std::string& text);

}  // namespace design2
