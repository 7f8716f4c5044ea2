#include "design2/sampler.hpp"

#include <stdexcept>
#include <utility>

#include "design2/rng.hpp"
#include "design2/synth.hpp"

namespace design2 {

const char* to_string(Construction c) {
    switch (c) {
        case Construction::selfdual: return "selfdual";
        case Construction::poly_mod4: return "poly_mod4";
        case Construction::poly_recursive: return "poly_recursive";
    }
    return "?";
}

bool parse_construction(const std::string& name, Construction& out) {
    if (name == "selfdual") out = Construction::selfdual;
    else if (name == "poly_mod4") out = Construction::poly_mod4;
    else if (name == "poly_recursive") out = Construction::poly_recursive;
    else return false;
    return true;
}

const char* to_string(PartKind k) {
    switch (k) {
        case PartKind::pauli_prefix: return "pauli_prefix";
        case PartKind::selfdual_word: return "selfdual_word";
        case PartKind::dual_upper: return "dual_upper";
        case PartKind::primal_lower: return "primal_lower";
        case PartKind::hadamard_swap: return "hadamard_swap";
    }
    return "?";
}

namespace {

void append_gates(CliffordCircuit& c, const CliffordCircuit& sub) {
    if (sub.n_data() != c.n_data())
        throw std::logic_error("sampler: sub-circuit width mismatch");
    if (sub.n_ancilla() > c.n_ancilla()) c.grow_ancilla(sub.n_ancilla());
    for (const Gate& g : sub.gates()) c.add(g);
    c.set_ancilla_restored(c.ancilla_restored() && sub.ancilla_restored());
}

// The lower unitriangular factor (1 0; rate 1) in basis coordinates:
// quadratic-phase layer for the Hankel weighted Gram matrix W * M_rate.
CliffordCircuit vw_circuit(const BasisSpec& basis, const FieldElement& rate,
                           Construction construction, const SamplerOptions& opts) {
    BitMatrix ww = basis.W().mul(mult_matrix(basis, rate));
    if (construction == Construction::poly_mod4)
        return synth_vw_mod4(ww, opts.strategy, opts.mul);
    return synth_vw_recursive(ww, opts.strategy, opts.mul);
}

}  // namespace

BasisSpec construction_basis(unsigned n, Construction construction,
                             const SamplerOptions& opts) {
    if (n == 0) throw std::invalid_argument("sampler: n must be positive");
    if (construction == Construction::selfdual)
        return build_selfdual_basis(n, opts.strategy, opts.mul);
    return BasisSpec::polynomial(FieldCtx::make(n));
}

DesignSample assemble_sample(const BasisSpec& basis, Construction construction,
                             const Sl2Element& M, const PauliOperator& pauli,
                             const SamplerOptions& opts, std::uint64_t seed,
                             std::uint64_t entropy_bits) {
    const FieldCtxPtr& ctx = basis.ctx();
    unsigned n = basis.n();
    if (M.ctx() != ctx)
        throw std::invalid_argument("sampler: element from a different field");
    if (pauli.wires() != n || pauli.phase != 0)
        throw std::invalid_argument("sampler: prefix must be a phase-free n-wire Pauli");

    CliffordCircuit c(n, 0);
    std::vector<SamplePart> parts;
    auto add_part = [&](PartKind kind, std::optional<Sl2Element> el, const auto& emit) {
        std::size_t begin = c.gates().size();
        emit();
        parts.push_back(SamplePart{kind, std::move(el), begin, c.gates().size()});
    };

    add_part(PartKind::pauli_prefix, std::nullopt,
             [&] { append_gates(c, synth_pauli(pauli)); });

    FieldElement zero = FieldElement::zero(ctx);
    FieldElement one = FieldElement::one(ctx);

    if (construction == Construction::selfdual) {
        GeneratorWord word = decompose(M);
        add_part(PartKind::selfdual_word, M, [&] {
            // The word multiplies left-to-right, so the rightmost factor
            // acts first and its circuit is emitted first.
            const auto& fs = word.factors();
            for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
                switch (it->kind) {
                    case GeneratorKind::diag:
                        append_gates(c, synth_mr(basis, *it->r, opts.strategy, opts.mul));
                        break;
                    case GeneratorKind::lower_unit:
                        append_gates(c, synth_transversal(TransversalKind::S_all, n));
                        break;
                    case GeneratorKind::swap:
                        append_gates(c, synth_transversal(TransversalKind::H_all, n));
                        break;
                    case GeneratorKind::upper_unit:
                        throw std::logic_error("sampler: unexpected upper factor");
                }
            }
        });
        return DesignSample{n,     construction, M,    pauli,        std::move(c),
                            parts, basis,        entropy_bits, seed};
    }

    if (!M.alpha().is_zero()) {
        // M = (1 0; beta/alpha 1) * (alpha gamma; 0 alpha^-1); the upper
        // factor is realized in the dual convention by conjugating its
        // primal building blocks with Hadamard layers (the two inner
        // layers between the blocks cancel and are not emitted).
        FieldElement ainv = field_inv(M.alpha());
        FieldElement u = field_mul(M.gamma(), ainv);
        FieldElement w = field_mul(M.beta(), ainv);
        if (!u.is_zero() || !M.alpha().is_one()) {
            Sl2Element upper(M.alpha(), zero, M.gamma(), ainv);
            add_part(PartKind::dual_upper, upper, [&] {
                append_gates(c, synth_transversal(TransversalKind::H_all, n));
                if (!u.is_zero())
                    append_gates(c, vw_circuit(basis, u, construction, opts));
                if (!M.alpha().is_one())
                    append_gates(c, synth_mr(basis, ainv, opts.strategy, opts.mul));
                append_gates(c, synth_transversal(TransversalKind::H_all, n));
            });
        }
        if (!w.is_zero()) {
            Sl2Element lower(one, w, zero, one);
            add_part(PartKind::primal_lower, lower,
                     [&] { append_gates(c, vw_circuit(basis, w, construction, opts)); });
        }
    } else {
        // M = (gamma 0; delta gamma^-1) * swap; the Hadamard layer
        // realizes the swap and the lower-triangular remainder acts in
        // the primal convention.
        add_part(PartKind::hadamard_swap, std::nullopt,
                 [&] { append_gates(c, synth_transversal(TransversalKind::H_all, n)); });
        FieldElement g = M.gamma();
        FieldElement w = field_mul(M.delta(), field_inv(g));
        if (!g.is_one() || !w.is_zero()) {
            Sl2Element lower(g, M.delta(), zero, field_inv(g));
            add_part(PartKind::primal_lower, lower, [&] {
                if (!g.is_one())
                    append_gates(c, synth_mr(basis, g, opts.strategy, opts.mul));
                if (!w.is_zero())
                    append_gates(c, vw_circuit(basis, w, construction, opts));
            });
        }
    }

    return DesignSample{n,     construction, M,    pauli,        std::move(c),
                        parts, basis,        entropy_bits, seed};
}

DesignSample sample(unsigned n, Construction construction, std::uint64_t seed,
                    const SamplerOptions& opts) {
    BasisSpec basis = construction_basis(n, construction, opts);
    BitSource rng(seed);
    Sl2Sample m = sample_uniform(basis.ctx(), rng);
    BitVec a(n), b(n);
    for (unsigned j = 0; j < n; ++j) a.set(j, rng.next_bit());
    for (unsigned j = 0; j < n; ++j) b.set(j, rng.next_bit());
    PauliOperator prefix{std::move(a), std::move(b), 0};
    return assemble_sample(basis, construction, m.element, prefix, opts, seed,
                           rng.bits_consumed());
}

std::vector<DesignSample> enumerate_ensemble(unsigned n, Construction construction,
                                             const SamplerOptions& opts) {
    if (n > 2) throw std::invalid_argument("enumerate_ensemble: n capped at 2");
    BasisSpec basis = construction_basis(n, construction, opts);
    const FieldCtxPtr& ctx = basis.ctx();
    std::uint64_t order = (1ull << (3 * n)) - (1ull << n);
    std::uint64_t npauli = 1ull << (2 * n);
    std::uint64_t mask = (1ull << n) - 1;
    std::vector<DesignSample> out;
    out.reserve(order * npauli);
    for (std::uint64_t k = 0; k < order; ++k) {
        Sl2Element m = decode_index(ctx, BitVec::from_u64(k, 3 * n));
        for (std::uint64_t p = 0; p < npauli; ++p) {
            PauliOperator prefix{BitVec::from_u64(p & mask, n),
                                 BitVec::from_u64(p >> n, n), 0};
            out.push_back(assemble_sample(basis, construction, m, prefix, opts, 0, 0));
        }
    }
    return out;
}

CliffordCircuit u_part(const DesignSample& s) {
    if (s.parts.empty() || s.parts.front().kind != PartKind::pauli_prefix)
        throw std::logic_error("u_part: sample is missing its Pauli prefix part");
    CliffordCircuit c(s.circuit.n_data(), s.circuit.n_ancilla());
    const auto& gates = s.circuit.gates();
    for (std::size_t i = s.parts.front().gate_end; i < gates.size(); ++i) c.add(gates[i]);
    c.set_ancilla_restored(s.circuit.ancilla_restored());
    return c;
}

PauliClassMixture ab_mixture_chain(unsigned n) {
    if (n == 0 || n > 6)
        throw std::invalid_argument("ab_mixture_chain: n must be in [1, 6]");
    PauliClassMixture mx;
    mx.n = n;
    std::int64_t N = std::int64_t(1) << n;
    mx.class_sizes = {N - 1, N - 1, (N - 1) * (N - 1)};

    // Weights from the group cardinalities: the alpha = 0 slice of SL2
    // has (2^n - 1) 2^n elements out of 2^(3n) - 2^n.
    std::int64_t order = (std::int64_t(1) << (3 * n)) - N;
    std::int64_t alpha0 = (N - 1) * N;
    mx.weight_b = Rational(alpha0, order);
    mx.weight_a = Rational(order - alpha0, order);

    Rational z(0);
    Rational col(1, N * (N - 1));  // 1/(N(N-1))
    Rational sq(1, N * N);         // 1/N^2

    // Upper-triangular mixing sends the first row to itself uniformly
    // and everything else to the complement of the first row uniformly;
    // column mixing then fixes the first column pointwise and spreads
    // every other column over itself.
    mx.procedure_a[0] = {col, z, col};
    mx.procedure_a[1] = {sq, col, sq};
    mx.procedure_a[2] = mx.procedure_a[1];

    // Transposition sends rows to columns; lower-triangular mixing then
    // spreads the first column over itself and the complement over
    // itself.
    mx.procedure_b[0] = {z, Rational(1, N - 1), z};
    mx.procedure_b[1] = {col, z, col};
    mx.procedure_b[2] = mx.procedure_b[1];

    Rational uniform(1, N * N - 1);
    mx.uniform = true;
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t) {
            mx.mixture[s][t] =
                mx.weight_a * mx.procedure_a[s][t] + mx.weight_b * mx.procedure_b[s][t];
            if (mx.mixture[s][t] != uniform) mx.uniform = false;
        }
    return mx;
}

}  // namespace design2
