#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <design2/exact_sim.hpp>
#include <design2/rng.hpp>
#include <design2/tableau.hpp>

using namespace design2;

namespace {

CliffordCircuit random_clifford(BitSource& rng, unsigned wires, unsigned max_gates,
                                bool allow_cs = false) {
    CliffordCircuit c(wires, 0);
    unsigned count = unsigned(rng.next_bits(8)) % (max_gates + 1);
    for (unsigned i = 0; i < count; ++i) {
        unsigned pick = unsigned(rng.next_bits(4)) % (allow_cs ? 10 : 9);
        GateKind k = GateKind(pick);
        unsigned a = unsigned(rng.next_bits(4)) % wires;
        if (is_two_qubit(k)) {
            if (wires < 2) continue;
            unsigned b = unsigned(rng.next_bits(4)) % (wires - 1);
            if (b >= a) ++b;
            c.add(k, a, b);
        } else {
            c.add(k, a);
        }
    }
    return c;
}

PauliOperator random_pauli(BitSource& rng, std::size_t wires) {
    PauliOperator p = PauliOperator::identity(wires);
    for (std::size_t q = 0; q < wires; ++q) {
        p.a.set(q, rng.next_bit());
        p.b.set(q, rng.next_bit());
    }
    p.phase = unsigned(rng.next_bits(2));
    return p;
}

}  // namespace

TEST_CASE("ring arithmetic basics") {
    Cyc8 one = Cyc8::from_int(1);
    Cyc8 i = Cyc8::i();
    CHECK(i * i == -one);
    CHECK(Cyc8::sqrt2() * Cyc8::sqrt2() == Cyc8::from_int(2));
    Cyc8 zeta{{0, 1, 0, 0}};
    Cyc8 p = one;
    for (int k = 0; k < 8; ++k) p = p * zeta;
    CHECK(p == one);  // zeta^8 = 1
    CHECK(zeta * zeta.conj() == one);
    CHECK((zeta + zeta.conj()) == Cyc8::sqrt2());
    Cyc8 h;
    REQUIRE(Cyc8::from_int(2).halve_sqrt2(h));
    CHECK(h == Cyc8::sqrt2());
    CHECK_FALSE(one.halve_sqrt2(h));
    CHECK(i == one.times_i_pow(1));
    CHECK(-one == one.times_i_pow(2));
    CHECK(std::abs(zeta.to_complex().real() - 0.7071067811865476) < 1e-15);
}

TEST_CASE("dense gate matrices match their definitions") {
    CliffordCircuit h(1, 0);
    h.add(GateKind::H, 0);
    auto uh = dense_simulate(h);
    CHECK(uh.scale() == 1);
    CHECK(uh.at(0, 0) == Cyc8::from_int(1));
    CHECK(uh.at(0, 1) == Cyc8::from_int(1));
    CHECK(uh.at(1, 0) == Cyc8::from_int(1));
    CHECK(uh.at(1, 1) == Cyc8::from_int(-1));

    CliffordCircuit s(1, 0);
    s.add(GateKind::S, 0);
    auto us = dense_simulate(s);
    CHECK(us.scale() == 0);
    CHECK(us.at(0, 0) == Cyc8::from_int(1));
    CHECK(us.at(1, 1) == Cyc8::i());
    CHECK(us.at(0, 1).is_zero());

    CliffordCircuit cs(2, 0);
    cs.add(GateKind::CS, 0, 1);
    auto ucs = dense_simulate(cs);
    for (std::size_t d = 0; d < 4; ++d)
        CHECK(ucs.at(d, d) == (d == 3 ? Cyc8::i() : Cyc8::from_int(1)));

    // H H = I with the scale fully reduced
    h.add(GateKind::H, 0);
    auto uhh = dense_simulate(h);
    CHECK(uhh.scale() == 0);
    CHECK(uhh.equals(DenseUnitary::identity(1)));
}

TEST_CASE("pauli product law matches dense multiplication") {
    BitSource rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        std::size_t wires = 1 + rng.next_bits(2) % 3;
        auto p = random_pauli(rng, wires);
        auto q = random_pauli(rng, wires);
        auto pq = pauli_mul(p, q);
        CHECK(pauli_dense(p).mul(pauli_dense(q)).equals(pauli_dense(pq)));
        // symplectic form = commutator indicator
        auto qp = pauli_mul(q, p);
        bool commute = pq.phase == qp.phase;
        CHECK(commute == !symplectic_form(p, q));
    }
}

TEST_CASE("tableau pinned single-gate images") {
    SymplecticTableau t(2);
    CHECK(t.image(0) == PauliOperator::x_on(2, 0));
    CHECK(t.image(2) == PauliOperator::z_on(2, 0));
    CHECK(t.preserves_symplectic_form());

    t.apply(Gate{GateKind::H, 0, 0});
    CHECK(t.image(0) == PauliOperator::z_on(2, 0));
    CHECK(t.image(2) == PauliOperator::x_on(2, 0));

    SymplecticTableau ts(1);
    ts.apply(Gate{GateKind::S, 0, 0});
    PauliOperator y{BitVec::from_u64(1, 1), BitVec::from_u64(1, 1), 1};  // i X Z
    CHECK(ts.image(0) == y);
    CHECK(ts.image(1) == PauliOperator::z_on(1, 0));
    // S Y S^dg = -X
    PauliOperator minus_x{BitVec::from_u64(1, 1), BitVec::from_u64(0, 1), 2};
    CHECK(ts.image_of(y) == minus_x);

    SymplecticTableau tc(2);
    tc.apply(Gate{GateKind::CNOT, 0, 1});
    PauliOperator xx{BitVec::from_u64(3, 2), BitVec::from_u64(0, 2), 0};
    PauliOperator zz{BitVec::from_u64(0, 2), BitVec::from_u64(3, 2), 0};
    CHECK(tc.image(0) == xx);
    CHECK(tc.image(3) == zz);

    CHECK_THROWS_AS(tc.apply(Gate{GateKind::CS, 0, 1}), std::invalid_argument);
}

TEST_CASE("tableau matches dense conjugation on random circuits") {
    BitSource rng(12);
    for (int iter = 0; iter < 10000; ++iter) {
        unsigned wires = 1 + unsigned(rng.next_bits(2)) % 3;
        auto c = random_clifford(rng, wires, 40);
        SymplecticTableau t(wires);
        t.apply(c);
        auto u = dense_simulate(c);
        auto udg = u.adjoint();
        for (std::size_t gen = 0; gen < 2 * wires; ++gen) {
            PauliOperator in = gen < wires ? PauliOperator::x_on(wires, gen)
                                           : PauliOperator::z_on(wires, gen - wires);
            auto expect = u.mul(pauli_dense(in)).mul(udg);
            CHECK(expect.equals(pauli_dense(t.image(gen))));
        }
        if (iter % 20 == 0) {
            CHECK(t.preserves_symplectic_form());
            auto p = random_pauli(rng, wires);
            CHECK(u.mul(pauli_dense(p)).mul(udg).equals(pauli_dense(t.image_of(p))));
        }
    }
}

TEST_CASE("tableau of a circuit composed with its inverse is the identity") {
    BitSource rng(13);
    for (int iter = 0; iter < 300; ++iter) {
        unsigned wires = 1 + unsigned(rng.next_bits(2));
        auto c = random_clifford(rng, wires, 30);
        auto round = compose(c, invert(c));
        SymplecticTableau t(wires);
        t.apply(round);
        for (std::size_t gen = 0; gen < 2 * wires; ++gen) {
            PauliOperator in = gen < wires ? PauliOperator::x_on(wires, gen)
                                           : PauliOperator::z_on(wires, gen - wires);
            CHECK(t.image(gen) == in);
        }
    }
}

TEST_CASE("inverse circuits invert dense semantics including CS") {
    BitSource rng(14);
    for (int iter = 0; iter < 200; ++iter) {
        unsigned wires = 1 + unsigned(rng.next_bits(1));
        auto c = random_clifford(rng, wires, 20, true);
        auto round = compose(c, invert(c));
        CHECK(dense_simulate(round).equals(DenseUnitary::identity(wires)));
    }
}

TEST_CASE("sparse simulation matches dense on random circuits") {
    BitSource rng(15);
    for (int iter = 0; iter < 400; ++iter) {
        unsigned wires = 1 + unsigned(rng.next_bits(3)) % 6;
        auto c = random_clifford(rng, wires, 30, true);
        BitVec label(wires);
        for (unsigned q = 0; q < wires; ++q) label.set(q, rng.next_bit());

        SparseState sp(wires, label, std::size_t(1) << wires);
        sp.apply(c);
        DenseState dn(wires, label);
        dn.apply(c);

        int target = std::max(sp.scale(), dn.scale());
        std::size_t nonzero = 0;
        for (std::size_t idx = 0; idx < (std::size_t(1) << wires); ++idx) {
            BitVec lab(wires);
            for (unsigned q = 0; q < wires; ++q) lab.set(q, (idx >> q) & 1);
            Cyc8 a = sp.amplitude(lab);
            Cyc8 b = dn.amp(idx);
            for (int t = sp.scale(); t < target; ++t) a = a * Cyc8::sqrt2();
            for (int t = dn.scale(); t < target; ++t) b = b * Cyc8::sqrt2();
            CHECK(a == b);
            if (!b.is_zero()) ++nonzero;
        }
        CHECK(sp.support() == nonzero);
    }
}

TEST_CASE("sparse support cap raises") {
    CliffordCircuit c(4, 0);
    for (unsigned q = 0; q < 4; ++q) c.add(GateKind::H, q);
    SparseState st(4, BitVec(4), 4);
    CHECK_THROWS_AS(st.apply(c), SupportOverflow);
}

TEST_CASE("code space unitary strips restored ancillas") {
    // compute-use-uncompute: effective CZ(0,1) built through an ancilla
    CliffordCircuit c(2, 1);
    c.add(GateKind::CNOT, 0, 2);
    c.add(GateKind::CZ, 2, 1);
    c.add(GateKind::CNOT, 0, 2);
    auto eff = code_space_unitary(c);
    CliffordCircuit direct(2, 0);
    direct.add(GateKind::CZ, 0, 1);
    CHECK(eff.equals(dense_simulate(direct)));

    // ancilla left dirty -> error
    CliffordCircuit bad(2, 1);
    bad.add(GateKind::CNOT, 0, 2);
    CHECK_THROWS_AS(code_space_unitary(bad), std::runtime_error);

    // superposition on the ancilla mid-circuit is fine if undone
    CliffordCircuit h2(1, 1);
    h2.add(GateKind::H, 1);
    h2.add(GateKind::CZ, 0, 1);
    h2.add(GateKind::CZ, 0, 1);
    h2.add(GateKind::H, 1);
    CHECK(code_space_unitary(h2).equals(DenseUnitary::identity(1)));
}

TEST_CASE("code space unitary agrees between sparse and dense paths") {
    BitSource rng(16);
    for (int iter = 0; iter < 100; ++iter) {
        unsigned n_data = 2 + unsigned(rng.next_bits(1));
        unsigned anc = n_data;
        auto body = random_clifford(rng, n_data, 15, true);

        // [CZ(0,1) via ancilla] body [CZ(0,1) via ancilla]
        CliffordCircuit c(n_data, 1);
        c.add(GateKind::CNOT, 0, anc);
        c.add(GateKind::CZ, anc, 1);
        c.add(GateKind::CNOT, 0, anc);
        for (const Gate& g : body.gates()) c.add(g);
        c.add(GateKind::CNOT, 0, anc);
        c.add(GateKind::CZ, anc, 1);
        c.add(GateKind::CNOT, 0, anc);

        CliffordCircuit equivalent(n_data, 0);
        equivalent.add(GateKind::CZ, 0, 1);
        for (const Gate& g : body.gates()) equivalent.add(g);
        equivalent.add(GateKind::CZ, 0, 1);

        auto roomy = code_space_unitary(c, 256);
        auto tight = code_space_unitary(c, 1);  // any H in the body forces dense
        CHECK(roomy.equals(tight));
        CHECK(roomy.equals(dense_simulate(equivalent)));
    }
}
