#include <sstream>
#include <stdexcept>

#include "design2/tableau.hpp"
#include "design2/verify.hpp"

namespace design2 {

namespace {

void put_block(BitMatrix& out, const BitMatrix& blk, unsigned row0, unsigned col0) {
    for (unsigned i = 0; i < blk.rows(); ++i)
        for (unsigned j = 0; j < blk.cols(); ++j)
            if (blk.get(i, j)) out.set(row0 + i, col0 + j, true);
}

}  // namespace

BitMatrix induced_bit_action(const Sl2Element& M, const BasisSpec& basis) {
    unsigned n = basis.n();
    const BitMatrix& W = basis.W();
    BitMatrix Winv(n, n);
    if (!W.inverse(Winv)) throw std::invalid_argument("basis Gram matrix not invertible");
    BitMatrix Ma = mult_matrix(basis, M.alpha());
    BitMatrix Mb = mult_matrix(basis, M.beta());
    BitMatrix Mc = mult_matrix(basis, M.gamma());
    BitMatrix Md = mult_matrix(basis, M.delta());
    BitMatrix out(2 * n, 2 * n);
    put_block(out, Ma, 0, 0);
    put_block(out, Mc.mul(Winv), 0, n);
    put_block(out, W.mul(Mb), n, 0);
    put_block(out, W.mul(Md).mul(Winv), n, n);
    return out;
}

InducesReport check_action(const CliffordCircuit& circuit, const BitMatrix& expect) {
    InducesReport rep;
    unsigned n = circuit.n_data();
    if (expect.rows() != 2 * n || expect.cols() != 2 * n)
        throw std::invalid_argument("check_action: expected action has the wrong shape");
    if (!circuit.clifford_only())
        throw std::invalid_argument("check_action: circuit is not Clifford-only");

    unsigned wires = circuit.total_wires();
    SymplecticTableau tab(wires);
    tab.apply(circuit);

    // The all-pairs form check is quadratic in the wire count; past a few
    // hundred wires the comparison against the (symplectic) expected
    // action plus the structural checks below carry the verdict.
    if (wires <= 512 && !tab.preserves_symplectic_form()) {
        rep.failure = "symplectic form not preserved";
        return rep;
    }

    // Each ancilla Z must come back as exactly itself up to other
    // ancilla Z's: phase 0, no X part, Z support confined to ancillas.
    // That alone pins the code space on both sides; together with the
    // symplectic form it also rules out ancilla X components below.
    for (unsigned q = n; q < wires; ++q) {
        PauliOperator img = tab.image(wires + q);
        std::ostringstream os;
        if (img.phase != 0 || img.a.any()) {
            os << "ancilla " << (q - n) << " not restored: Z image " << img.to_string();
            rep.failure = os.str();
            return rep;
        }
        for (unsigned w = 0; w < n; ++w)
            if (img.b.get(w)) {
                os << "ancilla " << (q - n) << " Z image touches data: "
                   << img.to_string();
                rep.failure = os.str();
                return rep;
            }
    }

    rep.structural_ok = true;

    auto data_generator = [&](unsigned g) {
        // g < n: X_g; else Z_{g-n}. Tableau indexes Z generators at
        // wires + wire.
        return g < n ? tab.image(g) : tab.image(wires + (g - n));
    };

    for (unsigned g = 0; g < 2 * n; ++g) {
        PauliOperator img = data_generator(g);
        rep.phases.push_back(img.phase);
        for (unsigned q = n; q < wires; ++q)
            if (img.a.get(q)) {
                std::ostringstream os;
                os << "generator " << g << " image has X on ancilla " << (q - n);
                rep.failure = os.str();
                rep.structural_ok = false;
                return rep;
            }
        // Ancilla Z components act as identity on restored ancillas and
        // are ignored; compare the data block only.
        for (unsigned w = 0; w < n; ++w) {
            bool eu = expect.get(w, g);
            bool ev = expect.get(n + w, g);
            if (img.a.get(w) != eu || img.b.get(w) != ev) {
                std::ostringstream os;
                os << "generator " << g << " image differs from the expected action "
                   << "at data wire " << w << ": got " << img.to_string();
                rep.failure = os.str();
                return rep;
            }
        }
    }
    rep.pass = true;
    return rep;
}

InducesReport check_induces(const CliffordCircuit& circuit, const Sl2Element& M,
                            const BasisSpec& basis) {
    if (circuit.n_data() != basis.n())
        throw std::invalid_argument("check_induces: circuit width does not match basis");
    return check_action(circuit, induced_bit_action(M, basis));
}

}  // namespace design2
