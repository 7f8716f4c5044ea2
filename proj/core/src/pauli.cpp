#include "design2/pauli.hpp"

#include <stdexcept>

namespace design2 {

PauliOperator PauliOperator::x_on(std::size_t wires, std::size_t q) {
    PauliOperator p = identity(wires);
    p.a.set(q, true);
    return p;
}

PauliOperator PauliOperator::z_on(std::size_t wires, std::size_t q) {
    PauliOperator p = identity(wires);
    p.b.set(q, true);
    return p;
}

std::string PauliOperator::to_string() const {
    static const char* name[] = {"I", "X", "Z", "Y"};
    static const char* ph[] = {"+", "+i ", "-", "-i "};
    std::string s = ph[phase & 3];
    for (std::size_t q = 0; q < wires(); ++q)
        s += name[(a.get(q) ? 1 : 0) | (b.get(q) ? 2 : 0)];
    return s;
}

PauliOperator pauli_mul(const PauliOperator& p, const PauliOperator& q) {
    if (p.wires() != q.wires())
        throw std::invalid_argument("pauli_mul: width mismatch");
    PauliOperator r = p;
    r.phase = (p.phase + q.phase + 2 * unsigned(dot(p.b, q.a))) & 3;
    r.a.xor_with(q.a);
    r.b.xor_with(q.b);
    return r;
}

bool symplectic_form(const PauliOperator& p, const PauliOperator& q) {
    return dot(p.a, q.b) ^ dot(p.b, q.a);
}

}  // namespace design2
