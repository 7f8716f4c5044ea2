#pragma once

#include <string>

#include "design2/bitvec.hpp"

namespace design2 {

// i^phase X^a Z^b with the X part written first. Products reorder through
// Z^b X^a' = (-1)^(b.a') X^a' Z^b.
struct PauliOperator {
    BitVec a;            // X part
    BitVec b;            // Z part
    unsigned phase = 0;  // exponent of i, mod 4

    static PauliOperator identity(std::size_t wires) {
        return PauliOperator{BitVec(wires), BitVec(wires), 0};
    }
    static PauliOperator x_on(std::size_t wires, std::size_t q);
    static PauliOperator z_on(std::size_t wires, std::size_t q);

    std::size_t wires() const { return a.size(); }
    bool is_identity() const { return !a.any() && !b.any() && phase == 0; }

    bool operator==(const PauliOperator&) const = default;

    std::string to_string() const;
};

PauliOperator pauli_mul(const PauliOperator& p, const PauliOperator& q);

// Symplectic form <p,q> = p.a . q.b + p.b . q.a; 0 iff p and q commute.
bool symplectic_form(const PauliOperator& p, const PauliOperator& q);

}  // namespace design2
