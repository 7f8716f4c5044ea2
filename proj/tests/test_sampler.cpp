#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <design2/exact_sim.hpp>
#include <design2/rng.hpp>
#include <design2/sampler.hpp>
#include <design2/sl2.hpp>
#include <design2/verify.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

using namespace design2;

namespace {

// Canonical key of the circuit's action on the data register modulo
// global phase: generator images with their signs.
std::string action_key(const CliffordCircuit& c) {
    PauliAction act = pauli_action(c);
    std::string key;
    for (const PauliOperator& img : act.images) {
        key += img.a.to_string01();
        key += '|';
        key += img.b.to_string01();
        key += '0' + char(img.phase);
        key += ';';
    }
    return key;
}

std::string sample_key(const DesignSample& s) {
    return action_key(s.circuit);
}

}  // namespace

TEST_CASE("same seed reproduces byte-identical circuits") {
    for (Construction con :
         {Construction::selfdual, Construction::poly_mod4, Construction::poly_recursive}) {
        unsigned n = con == Construction::selfdual ? 3 : 4;
        DesignSample s1 = sample(n, con, 12345);
        DesignSample s2 = sample(n, con, 12345);
        REQUIRE(serialize(s1.circuit) == serialize(s2.circuit));
        REQUIRE(s1.M == s2.M);
        REQUIRE(s1.pauli == s2.pauli);
        REQUIRE(s1.entropy_bits_consumed == s2.entropy_bits_consumed);
        DesignSample s3 = sample(n, con, 12346);
        REQUIRE(serialize(s1.circuit) != serialize(s3.circuit));
    }
}

TEST_CASE("one-qubit sampling reaches all 24 ensemble elements") {
    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 400 && seen.size() < 24; ++seed)
        seen.insert(sample_key(sample(1, Construction::poly_recursive, seed)));
    REQUIRE(seen.size() == 24);
}

TEST_CASE("enumerated ensembles have the right size and no duplicates") {
    for (Construction con :
         {Construction::selfdual, Construction::poly_mod4, Construction::poly_recursive}) {
        auto ens = enumerate_ensemble(1, con);
        REQUIRE(ens.size() == 24);
        std::set<std::string> keys;
        for (const DesignSample& s : ens) keys.insert(sample_key(s));
        REQUIRE(keys.size() == 24);
    }
}

TEST_CASE("two-qubit enumerated ensemble is 960 distinct elements") {
    auto ens = enumerate_ensemble(2, Construction::poly_recursive);
    REQUIRE(ens.size() == 960);
    std::set<std::string> keys;
    for (const DesignSample& s : ens) keys.insert(sample_key(s));
    REQUIRE(keys.size() == 960);
}

TEST_CASE("entropy use stays in the expected window") {
    unsigned n = 8;
    double total = 0.0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        DesignSample s = sample(n, Construction::poly_recursive, 777000 + t);
        REQUIRE(s.entropy_bits_consumed >= 5 * n);
        total += double(s.entropy_bits_consumed);
    }
    double mean = total / trials;
    REQUIRE(mean >= 5.0 * n);
    REQUIRE(mean <= 5.0 * n + 3.0);
}

TEST_CASE("sampled circuits pass per-factor verification") {
    for (unsigned n : {2u, 3u, 5u}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            DesignSample s = sample(n, Construction::selfdual, seed);
            SampleReport rep = verify_sample(s);
            CAPTURE(n);
            CAPTURE(seed);
            CAPTURE(rep.failure);
            REQUIRE(rep.pass);
            REQUIRE(rep.all_checked);
        }
    }
    for (unsigned n : {1u, 2u, 3u, 5u, 8u}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            DesignSample s = sample(n, Construction::poly_recursive, seed);
            SampleReport rep = verify_sample(s);
            CAPTURE(n);
            CAPTURE(seed);
            CAPTURE(rep.failure);
            REQUIRE(rep.pass);
            REQUIRE(rep.all_checked);
        }
    }
    for (unsigned n : {1u, 2u, 3u}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            DesignSample s = sample(n, Construction::poly_mod4, seed);
            SampleReport rep = verify_sample(s, 1024);
            CAPTURE(n);
            CAPTURE(seed);
            CAPTURE(rep.failure);
            REQUIRE(rep.pass);
        }
    }
}

TEST_CASE("verification flags a tampered circuit") {
    DesignSample s = sample(3, Construction::poly_recursive, 9);
    s.circuit.add(GateKind::X, 0);
    SampleReport rep = verify_sample(s);
    REQUIRE(!rep.pass);
}

TEST_CASE("construction properties of sampled circuits") {
    DesignSample sd = sample(3, Construction::selfdual, 4);
    REQUIRE(sd.circuit.clifford_only());
    DesignSample pr = sample(4, Construction::poly_recursive, 4);
    REQUIRE(pr.circuit.clifford_only());
    REQUIRE(sd.circuit.ancilla_restored());
    REQUIRE(pr.circuit.ancilla_restored());
    bool found_cs = false;
    for (std::uint64_t seed = 0; seed < 16 && !found_cs; ++seed) {
        DesignSample pm = sample(4, Construction::poly_mod4, seed);
        REQUIRE(pm.circuit.ancilla_restored());
        for (const Gate& g : pm.circuit.gates())
            if (g.kind == GateKind::CS) found_cs = true;
    }
    REQUIRE(found_cs);
}

TEST_CASE("self-dual construction rejects non-admissible widths") {
    REQUIRE_THROWS_AS(sample(4, Construction::selfdual, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(construction_basis(7, Construction::selfdual), std::invalid_argument);
}

TEST_CASE("triangular procedures match brute-force orbit counts") {
    for (unsigned n : {1u, 2u}) {
        PauliClassMixture mix = ab_mixture_chain(n);
        auto ctx = FieldCtx::make(n);
        std::uint64_t N = 1ull << n;

        auto pair_class = [&](const FieldElement& a, const FieldElement& b) {
            if (b.is_zero()) return 0;
            if (a.is_zero()) return 1;
            return 2;
        };
        std::vector<std::pair<FieldElement, FieldElement>> pairs;
        for (std::uint64_t ai = 0; ai < N; ++ai)
            for (std::uint64_t bi = 0; bi < N; ++bi) {
                if (ai == 0 && bi == 0) continue;
                pairs.emplace_back(FieldElement::from_u64(ctx, ai),
                                   FieldElement::from_u64(ctx, bi));
            }

        // Procedure A: all upper-triangular elements followed by all
        // unit lower-triangular ones (the alpha != 0 slice of the group).
        std::vector<Sl2Element> proc_a;
        FieldElement one = FieldElement::one(ctx);
        FieldElement zero = FieldElement::zero(ctx);
        for (const Sl2Element& up : enumerate_sl2(ctx, Sl2Subgroup::upper))
            for (std::uint64_t wi = 0; wi < N; ++wi) {
                Sl2Element lo(one, FieldElement::from_u64(ctx, wi), zero, one);
                proc_a.push_back(lo.mul(up));
            }
        // Procedure B: the Hadamard swap followed by all lower-triangular
        // elements (the alpha = 0 slice).
        std::vector<Sl2Element> proc_b;
        Sl2Element sw(zero, one, one, zero);
        for (const Sl2Element& lo : enumerate_sl2(ctx, Sl2Subgroup::lower))
            proc_b.push_back(lo.mul(sw));

        std::int64_t total = std::int64_t(proc_a.size() + proc_b.size());
        REQUIRE(mix.weight_a == Rational(std::int64_t(proc_a.size()), total));
        REQUIRE(mix.weight_b == Rational(std::int64_t(proc_b.size()), total));
        REQUIRE(proc_b.size() == N * (N - 1));

        auto check = [&](const std::vector<Sl2Element>& slice,
                         const std::array<std::array<Rational, 3>, 3>& table) {
            for (const auto& [a, b] : pairs) {
                std::map<std::pair<std::string, std::string>, std::int64_t> counts;
                for (const Sl2Element& m : slice) {
                    auto [a2, b2] = act_on_pair(m, a, b);
                    ++counts[{a2.to_string(), b2.to_string()}];
                }
                int cs = pair_class(a, b);
                for (const auto& [a2, b2] : pairs) {
                    std::int64_t c = 0;
                    auto it = counts.find({a2.to_string(), b2.to_string()});
                    if (it != counts.end()) c = it->second;
                    REQUIRE(Rational(c, std::int64_t(slice.size())) ==
                            table[cs][pair_class(a2, b2)]);
                }
            }
        };
        check(proc_a, mix.procedure_a);
        check(proc_b, mix.procedure_b);
    }
}

TEST_CASE("procedure mixture is exactly uniform") {
    for (unsigned n = 1; n <= 6; ++n) {
        PauliClassMixture mix = ab_mixture_chain(n);
        std::int64_t N = 1ll << n;
        REQUIRE(mix.uniform);
        REQUIRE(mix.weight_a == Rational(N, N + 1));
        REQUIRE(mix.weight_b == Rational(1, N + 1));
        REQUIRE(mix.weight_a + mix.weight_b == Rational(1));
        REQUIRE(mix.class_sizes[0] == N - 1);
        REQUIRE(mix.class_sizes[1] == N - 1);
        REQUIRE(mix.class_sizes[2] == (N - 1) * (N - 1));
        Rational flat(1, N * N - 1);
        for (int s = 0; s < 3; ++s) {
            Rational row_a(0), row_b(0);
            for (int t = 0; t < 3; ++t) {
                REQUIRE(mix.mixture[s][t] == flat);
                row_a += Rational(mix.class_sizes[t]) * mix.procedure_a[s][t];
                row_b += Rational(mix.class_sizes[t]) * mix.procedure_b[s][t];
            }
            REQUIRE(row_a == Rational(1));
            REQUIRE(row_b == Rational(1));
        }
    }
}

TEST_CASE("group element sampling is exactly uniform over small fields") {
    auto ctx = FieldCtx::make(2);
    std::uint64_t order = (1ull << 6) - (1ull << 2);
    std::map<std::string, std::size_t> hist;
    BitSource rng(31415);
    const std::size_t trials = 6000;
    for (std::size_t t = 0; t < trials; ++t) {
        Sl2Sample s = sample_uniform(ctx, rng);
        std::string key = s.element.alpha().to_string() + s.element.beta().to_string() +
                          s.element.gamma().to_string() + s.element.delta().to_string();
        ++hist[key];
    }
    REQUIRE(hist.size() == order);
    // Exact uniformity is enumerative (decode_index is a bijection);
    // here just guard against gross skew.
    for (const auto& [k, c] : hist) {
        REQUIRE(c > trials / order / 4);
        REQUIRE(c < trials * 4 / order);
    }
}

TEST_CASE("pauli prefix covers all labels and strips cleanly") {
    auto ens = enumerate_ensemble(1, Construction::poly_recursive);
    std::set<std::string> prefixes;
    for (const DesignSample& s : ens) {
        prefixes.insert(s.pauli.to_string());
        CliffordCircuit u = u_part(s);
        REQUIRE(u.gates().size() + s.parts.front().gate_end == s.circuit.gates().size());
        REQUIRE(s.parts.front().kind == PartKind::pauli_prefix);
        REQUIRE(s.pauli.phase == 0);
    }
    REQUIRE(prefixes.size() == 4);
}

TEST_CASE("construction names round-trip") {
    for (Construction con :
         {Construction::selfdual, Construction::poly_mod4, Construction::poly_recursive}) {
        Construction back;
        REQUIRE(parse_construction(to_string(con), back));
        REQUIRE(back == con);
    }
    Construction out;
    REQUIRE(!parse_construction("nonsense", out));
}
