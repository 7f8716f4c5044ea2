#include <algorithm>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>

#include "design2/synth.hpp"
#include "design2/tableau.hpp"
#include "design2/verify.hpp"

namespace design2 {

namespace {

unsigned popcount_and(const BitVec& a, const BitVec& b) {
    unsigned c = 0;
    for (std::size_t w = 0; w < a.word_count(); ++w)
        c += unsigned(__builtin_popcountll(a.word(w) & b.word(w)));
    return c;
}

}  // namespace

PauliOperator conjugate_pauli_dense(const DenseUnitary& u, const PauliOperator& p) {
    DenseUnitary m = u.mul(pauli_dense(p)).mul(u.adjoint());
    m.reduce();
    if (m.scale() != 0)
        throw std::runtime_error("conjugate_pauli_dense: irrational entries");
    unsigned n = u.wires();
    std::size_t dim = m.dim();

    // i^k X^a Z^b has entries [c ^ a][c] = i^k (-1)^(b.c) and zero
    // elsewhere; read a and the phase off column 0, b off the e_j
    // columns, then verify every entry.
    std::size_t a = dim;
    for (std::size_t r = 0; r < dim; ++r)
        if (!m.at(r, 0).is_zero()) {
            a = r;
            break;
        }
    if (a == dim) throw std::runtime_error("conjugate_pauli_dense: zero column");
    Cyc8 base = m.at(a, 0);
    unsigned phase = 4;
    for (unsigned t = 0; t < 4; ++t)
        if (base == Cyc8::from_int(1).times_i_pow(t)) phase = t;
    if (phase == 4) throw std::runtime_error("conjugate_pauli_dense: not a Pauli");

    BitVec av(n), bv(n);
    for (unsigned j = 0; j < n; ++j) av.set(j, (a >> j) & 1);
    for (unsigned j = 0; j < n; ++j) {
        Cyc8 e = m.at((std::size_t(1) << j) ^ a, std::size_t(1) << j);
        if (e == -base)
            bv.set(j, true);
        else if (!(e == base))
            throw std::runtime_error("conjugate_pauli_dense: not a Pauli");
    }
    std::uint64_t bbits = 0;
    for (unsigned j = 0; j < n; ++j)
        if (bv.get(j)) bbits |= std::uint64_t(1) << j;
    for (std::size_t c = 0; c < dim; ++c) {
        bool neg = __builtin_popcountll(c & bbits) & 1;
        for (std::size_t r = 0; r < dim; ++r) {
            Cyc8 want;
            if (r == (c ^ a)) want = neg ? -base : base;
            if (!(m.at(r, c) == want))
                throw std::runtime_error("conjugate_pauli_dense: not a Pauli");
        }
    }
    return PauliOperator{std::move(av), std::move(bv), phase};
}

PauliOperator PauliAction::image(const PauliOperator& p) const {
    PauliOperator out = PauliOperator::identity(n);
    for (unsigned j = 0; j < n; ++j)
        if (p.a.get(j)) out = pauli_mul(out, images[j]);
    for (unsigned j = 0; j < n; ++j)
        if (p.b.get(j)) out = pauli_mul(out, images[n + j]);
    out.phase = (out.phase + p.phase) % 4;
    return out;
}

BitMatrix PauliAction::bit_action() const {
    BitMatrix out(2 * n, 2 * n);
    for (unsigned g = 0; g < 2 * n; ++g)
        for (unsigned w = 0; w < n; ++w) {
            if (images[g].a.get(w)) out.set(w, g, true);
            if (images[g].b.get(w)) out.set(n + w, g, true);
        }
    return out;
}

std::uint32_t PauliAction::label_image(std::uint32_t label) const {
    if (n > 15) throw std::invalid_argument("PauliAction: label packing needs n <= 15");
    std::uint32_t mask = (1u << n) - 1;
    PauliOperator p{BitVec::from_u64(label & mask, n), BitVec::from_u64(label >> n, n), 0};
    PauliOperator img = image(p);
    std::uint32_t out = 0;
    for (unsigned j = 0; j < n; ++j) {
        if (img.a.get(j)) out |= 1u << j;
        if (img.b.get(j)) out |= 1u << (n + j);
    }
    return out;
}

std::pair<std::uint32_t, int> PauliAction::hermitian_image(std::uint32_t label) const {
    if (n > 15) throw std::invalid_argument("PauliAction: label packing needs n <= 15");
    std::uint32_t mask = (1u << n) - 1;
    PauliOperator p{BitVec::from_u64(label & mask, n), BitVec::from_u64(label >> n, n), 0};
    p.phase = popcount_and(p.a, p.b) % 4;
    PauliOperator img = image(p);
    std::uint32_t out = 0;
    for (unsigned j = 0; j < n; ++j) {
        if (img.a.get(j)) out |= 1u << j;
        if (img.b.get(j)) out |= 1u << (n + j);
    }
    unsigned rep = popcount_and(img.a, img.b) % 4;
    unsigned residue = (img.phase + 4 - rep) % 4;
    if (residue == 0) return {out, 1};
    if (residue == 2) return {out, -1};
    throw std::runtime_error("PauliAction: Hermitian representative maps to +-i times one");
}

PauliAction pauli_action(const CliffordCircuit& c, std::size_t max_support) {
    PauliAction act;
    unsigned n = c.n_data();
    act.n = n;
    if (!c.ancilla_restored())
        throw std::runtime_error("pauli_action: circuit does not restore its ancillas");

    if (c.clifford_only()) {
        unsigned wires = c.total_wires();
        SymplecticTableau tab(wires);
        tab.apply(c);
        for (unsigned q = n; q < wires; ++q) {
            PauliOperator img = tab.image(wires + q);
            bool ok = img.phase == 0 && !img.a.any();
            for (unsigned w = 0; ok && w < n; ++w) ok = !img.b.get(w);
            if (!ok) throw std::runtime_error("pauli_action: ancilla not cleanly restored");
        }
        for (unsigned g = 0; g < 2 * n; ++g) {
            PauliOperator full = g < n ? tab.image(g) : tab.image(wires + (g - n));
            for (unsigned q = n; q < wires; ++q)
                if (full.a.get(q))
                    throw std::runtime_error("pauli_action: data image leaks X onto an ancilla");
            // Ancilla Z components act as +1 on the restored register.
            PauliOperator data{BitVec(n), BitVec(n), full.phase};
            for (unsigned w = 0; w < n; ++w) {
                data.a.set(w, full.a.get(w));
                data.b.set(w, full.b.get(w));
            }
            act.images.push_back(std::move(data));
        }
        return act;
    }

    DenseUnitary u = code_space_unitary(c, max_support);
    for (unsigned g = 0; g < 2 * n; ++g) {
        PauliOperator p =
            g < n ? PauliOperator::x_on(n, g) : PauliOperator::z_on(n, g - n);
        act.images.push_back(conjugate_pauli_dense(u, p));
    }
    return act;
}

MixingReport pauli_mixing_check(const std::vector<CliffordCircuit>& u_parts, unsigned n) {
    if (n == 0 || n > 4)
        throw std::invalid_argument("pauli_mixing_check: n must be in [1, 4]");
    MixingReport rep;
    rep.n = n;
    rep.ensemble_size = u_parts.size();
    std::size_t nt = (std::size_t(1) << (2 * n)) - 1;
    rep.counts.assign(nt, std::vector<std::size_t>(nt, 0));
    if (u_parts.empty()) {
        rep.failure = "empty ensemble";
        return rep;
    }
    for (const CliffordCircuit& c : u_parts) {
        PauliAction act = pauli_action(c);
        for (std::uint32_t l = 1; l <= nt; ++l) {
            std::uint32_t img = act.label_image(l);
            if (img == 0) {
                rep.failure = "a nontrivial Pauli maps to the identity";
                return rep;
            }
            ++rep.counts[l - 1][img - 1];
        }
    }
    if (rep.ensemble_size % nt != 0) {
        rep.failure = "ensemble size is not divisible by the Pauli count";
        return rep;
    }
    std::size_t want = rep.ensemble_size / nt;
    for (std::size_t l = 0; l < nt; ++l)
        for (std::size_t m = 0; m < nt; ++m)
            if (rep.counts[l][m] != want) {
                std::ostringstream os;
                os << "image of label " << (l + 1) << " puts weight " << rep.counts[l][m]
                   << "/" << rep.ensemble_size << " on label " << (m + 1) << ", expected "
                   << want << "/" << rep.ensemble_size;
                rep.failure = os.str();
                return rep;
            }
    rep.pass = true;
    return rep;
}

Rational TwirlTable::coefficient(std::size_t in_pair, std::size_t out_pair) const {
    return Rational(counts[in_pair][out_pair], std::int64_t(ensemble_size));
}

TwirlReport bilateral_twirl_check(const std::vector<CliffordCircuit>& ensemble,
                                  unsigned n) {
    if (n == 0 || n > 2)
        throw std::invalid_argument("bilateral_twirl_check: n must be 1 or 2");
    TwirlReport rep;
    rep.n = n;
    std::size_t q = std::size_t(1) << (2 * n);
    std::size_t pairs = q * q;
    rep.table.n = n;
    rep.table.ensemble_size = ensemble.size();
    rep.table.counts.assign(pairs, std::vector<std::int64_t>(pairs, 0));
    if (ensemble.empty()) {
        rep.failure = "empty ensemble";
        return rep;
    }

    std::vector<std::uint32_t> img(q);
    std::vector<int> sign(q);
    for (const CliffordCircuit& c : ensemble) {
        PauliAction act = pauli_action(c);
        for (std::uint32_t l = 0; l < q; ++l) {
            auto [out, s] = act.hermitian_image(l);
            img[l] = out;
            sign[l] = s;
        }
        for (std::size_t la = 0; la < q; ++la)
            for (std::size_t lb = 0; lb < q; ++lb)
                rep.table.counts[la * q + lb][img[la] * q + img[lb]] +=
                    sign[la] * sign[lb];
    }

    std::int64_t size = std::int64_t(ensemble.size());
    std::int64_t nt = std::int64_t(q) - 1;
    rep.diagonal_coefficient = Rational(1, nt);
    auto fail = [&](std::size_t in, std::size_t out, const char* what) {
        std::ostringstream os;
        os << what << " at input pair (" << in / q << "," << in % q << "), output pair ("
           << out / q << "," << out % q << "): coefficient " << rep.table.counts[in][out]
           << "/" << size;
        rep.failure = os.str();
    };
    for (std::size_t la = 0; la < q; ++la)
        for (std::size_t lb = 0; lb < q; ++lb) {
            std::size_t in = la * q + lb;
            for (std::size_t out = 0; out < pairs; ++out) {
                std::int64_t got = rep.table.counts[in][out];
                std::int64_t want_num;  // times size
                if (la == lb) {
                    bool diag_out = (out / q) == (out % q);
                    if (la == 0)
                        want_num = out == 0 ? size : 0;
                    else if (diag_out && out != 0)
                        want_num = size / nt;  // size divisible: checked below
                    else
                        want_num = 0;
                    if (la != 0 && size % nt != 0) {
                        rep.failure = "ensemble size not divisible by the Pauli count";
                        return rep;
                    }
                } else {
                    want_num = 0;
                }
                if (got != want_num) {
                    fail(in, out, la == lb ? "diagonal input off target" : "nonzero off-diagonal average");
                    return rep;
                }
            }
        }
    rep.pass = true;
    return rep;
}

double frame_potential(const std::vector<DenseUnitary>& ensemble) {
    double total = 0.0;
    std::size_t N = ensemble.size();
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const DenseUnitary& a = ensemble[i];
            const DenseUnitary& b = ensemble[j];
            Cyc8 tr;
            for (std::size_t r = 0; r < a.dim(); ++r)
                for (std::size_t c = 0; c < a.dim(); ++c)
                    tr = tr + a.at(r, c).conj() * b.at(r, c);
            double mag2 = std::norm(tr.to_complex()) / std::pow(2.0, a.scale() + b.scale());
            total += mag2 * mag2;
        }
    return total / (double(N) * double(N));
}

std::vector<DenseUnitary> one_qubit_clifford_group() {
    auto key_of = [](const DenseUnitary& u) {
        // Canonical bytes modulo global phase: minimum over the eight
        // zeta rotations of the reduced entry list.
        DenseUnitary r = u;
        r.reduce();
        Cyc8 zeta{{0, 1, 0, 0}};
        std::vector<std::int64_t> best;
        for (int k = 0; k < 8; ++k) {
            std::vector<std::int64_t> cur;
            cur.push_back(r.scale());
            Cyc8 rot = Cyc8::from_int(1);
            for (int t = 0; t < k; ++t) rot = rot * zeta;
            for (std::size_t i = 0; i < r.dim(); ++i)
                for (std::size_t j = 0; j < r.dim(); ++j) {
                    Cyc8 e = r.at(i, j) * rot;
                    for (int w = 0; w < 4; ++w) cur.push_back(e.c[w]);
                }
            if (k == 0 || cur < best) best = std::move(cur);
        }
        return best;
    };

    std::vector<DenseUnitary> gens;
    for (GateKind k : {GateKind::H, GateKind::S}) {
        DenseUnitary g = DenseUnitary::identity(1);
        g.apply_gate(Gate{k, 0, 0});
        gens.push_back(g);
    }

    std::map<std::vector<std::int64_t>, DenseUnitary> seen;
    DenseUnitary id = DenseUnitary::identity(1);
    seen.emplace(key_of(id), id);
    std::vector<DenseUnitary> frontier{id};
    while (!frontier.empty()) {
        std::vector<DenseUnitary> next;
        for (const DenseUnitary& u : frontier)
            for (const DenseUnitary& g : gens) {
                DenseUnitary v = g.mul(u);
                v.reduce();
                auto key = key_of(v);
                if (seen.emplace(key, v).second) next.push_back(v);
            }
        frontier = std::move(next);
    }
    std::vector<DenseUnitary> out;
    for (auto& [k, u] : seen) out.push_back(u);
    if (out.size() != 24)
        throw std::logic_error("one_qubit_clifford_group: closure is not 24 elements");
    return out;
}

namespace {

CliffordCircuit part_slice(const DesignSample& s, const SamplePart& p) {
    CliffordCircuit c(s.circuit.n_data(), s.circuit.n_ancilla());
    for (std::size_t i = p.gate_begin; i < p.gate_end; ++i) c.add(s.circuit.gates()[i]);
    return c;
}

BitMatrix block_swap_matrix(unsigned n) {
    BitMatrix m(2 * n, 2 * n);
    for (unsigned i = 0; i < n; ++i) {
        m.set(i, n + i, true);
        m.set(n + i, i, true);
    }
    return m;
}

bool slice_equals(const DesignSample& s, const SamplePart& p, const CliffordCircuit& want) {
    if (p.gate_end - p.gate_begin != want.gates().size()) return false;
    for (std::size_t i = 0; i < want.gates().size(); ++i)
        if (!(s.circuit.gates()[p.gate_begin + i] == want.gates()[i])) return false;
    return true;
}

}  // namespace

BitMatrix expected_u_action(const Sl2Element& M, Construction construction,
                            const BasisSpec& basis) {
    if (construction == Construction::selfdual) return induced_bit_action(M, basis);
    unsigned n = basis.n();
    const FieldCtxPtr& ctx = basis.ctx();
    BasisSpec dual = BasisSpec::dual_of_polynomial(ctx);
    FieldElement zero = FieldElement::zero(ctx);
    FieldElement one = FieldElement::one(ctx);
    if (!M.alpha().is_zero()) {
        FieldElement ainv = field_inv(M.alpha());
        Sl2Element upper(M.alpha(), zero, M.gamma(), ainv);
        Sl2Element lower(one, field_mul(M.beta(), ainv), zero, one);
        return induced_bit_action(lower, basis).mul(induced_bit_action(upper, dual));
    }
    Sl2Element lower(M.gamma(), M.delta(), zero, field_inv(M.gamma()));
    return induced_bit_action(lower, basis).mul(block_swap_matrix(n));
}

SampleReport verify_sample(const DesignSample& s, std::size_t max_support) {
    SampleReport rep;
    unsigned n = s.n;

    // The recorded parts must tile the gate list; a stray gate outside
    // every range would otherwise escape all per-part checks.
    std::size_t cursor = 0;
    for (const SamplePart& part : s.parts) {
        if (part.gate_begin != cursor || part.gate_end < part.gate_begin) {
            rep.failure = "part ranges do not tile the gate list";
            return rep;
        }
        cursor = part.gate_end;
    }
    if (s.parts.empty() || cursor != s.circuit.gates().size() ||
        s.parts.front().kind != PartKind::pauli_prefix) {
        rep.failure = "part ranges do not tile the gate list";
        return rep;
    }
    BasisSpec dual = s.construction == Construction::selfdual
                         ? s.basis
                         : BasisSpec::dual_of_polynomial(s.basis.ctx());

    BitMatrix expected(2 * n, 2 * n);
    for (unsigned i = 0; i < 2 * n; ++i) expected.set(i, i, true);

    bool any_fail = false;
    bool all_checked = true;
    for (const SamplePart& part : s.parts) {
        PartCheck pc;
        pc.kind = part.kind;
        switch (part.kind) {
            case PartKind::pauli_prefix: {
                pc.method = "structural";
                pc.checked = true;
                pc.pass = slice_equals(s, part, synth_pauli(s.pauli));
                if (!pc.pass) pc.failure = "prefix gates do not realize the recorded Pauli";
                break;
            }
            case PartKind::hadamard_swap: {
                pc.method = "structural";
                pc.checked = true;
                pc.pass = slice_equals(s, part, synth_transversal(TransversalKind::H_all, n));
                if (!pc.pass) pc.failure = "swap layer is not a transversal Hadamard";
                expected = block_swap_matrix(n).mul(expected);
                break;
            }
            default: {
                const BasisSpec& pb = part.kind == PartKind::dual_upper ? dual : s.basis;
                expected = induced_bit_action(*part.element, pb).mul(expected);
                CliffordCircuit slice = part_slice(s, part);
                if (slice.clifford_only()) {
                    InducesReport ir = check_induces(slice, *part.element, pb);
                    pc.method = "tableau";
                    pc.checked = true;
                    pc.pass = ir.pass;
                    pc.failure = ir.failure;
                } else {
                    try {
                        PauliAction act = pauli_action(slice, max_support);
                        pc.method = "dense";
                        pc.checked = true;
                        pc.pass = act.bit_action() == induced_bit_action(*part.element, pb);
                        if (!pc.pass)
                            pc.failure = "dense label action differs from the induced action";
                    } catch (const SupportOverflow& e) {
                        pc.method = "skipped";
                        pc.failure = e.what();
                    } catch (const std::invalid_argument& e) {
                        pc.method = "skipped";
                        pc.failure = e.what();
                    } catch (const std::runtime_error& e) {
                        pc.method = "dense";
                        pc.checked = true;
                        pc.pass = false;
                        pc.failure = e.what();
                    }
                }
                break;
            }
        }
        if (pc.checked && !pc.pass) any_fail = true;
        if (!pc.checked) all_checked = false;
        rep.parts.push_back(std::move(pc));
    }

    try {
        PauliAction whole = pauli_action(u_part(s), max_support);
        rep.composition_checked = true;
        rep.composition_ok = whole.bit_action() == expected;
        if (!rep.composition_ok) {
            any_fail = true;
            rep.failure = "whole-circuit label action differs from the factor product";
        }
    } catch (const SupportOverflow&) {
    } catch (const std::invalid_argument&) {
    } catch (const std::runtime_error& e) {
        rep.composition_checked = true;
        rep.composition_ok = false;
        any_fail = true;
        rep.failure = e.what();
    }

    rep.all_checked = all_checked && rep.composition_checked;
    rep.pass = !any_fail;
    if (!rep.pass && rep.failure.empty())
        for (const PartCheck& pc : rep.parts)
            if (pc.checked && !pc.pass) {
                rep.failure = std::string(to_string(pc.kind)) + ": " + pc.failure;
                break;
            }
    return rep;
}

}  // namespace design2
