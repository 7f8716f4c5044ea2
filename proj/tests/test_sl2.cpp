#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <design2/sl2.hpp>

using namespace design2;

namespace {

using Key = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>;

Key key_of(const Sl2Element& m) {
    return {m.alpha().coords().low_u64(), m.beta().coords().low_u64(),
            m.gamma().coords().low_u64(), m.delta().coords().low_u64()};
}

Sl2Element random_element(const FieldCtxPtr& ctx, BitSource& rng) {
    return sample_uniform(ctx, rng).element;
}

FieldElement fe(const FieldCtxPtr& ctx, std::uint64_t v) { return FieldElement::from_u64(ctx, v); }

}  // namespace

TEST_CASE("constructor enforces the determinant") {
    auto ctx = FieldCtx::make(3);
    CHECK_NOTHROW(Sl2Element::identity(ctx));
    // alpha=1, delta=1, beta=1, gamma=1: det = 1 + 1 = 0
    CHECK_THROWS_AS(Sl2Element(fe(ctx, 1), fe(ctx, 1), fe(ctx, 1), fe(ctx, 1)),
                    std::invalid_argument);
    // alpha=0, beta=0 row of zeros
    CHECK_THROWS_AS(Sl2Element(fe(ctx, 0), fe(ctx, 0), fe(ctx, 1), fe(ctx, 1)),
                    std::invalid_argument);
}

TEST_CASE("index decoding is a bijection onto the group") {
    for (unsigned n : {1u, 2u}) {
        auto ctx = FieldCtx::make(n);
        std::uint64_t order = (1ull << (3 * n)) - (1ull << n);

        // independent enumeration: scan all 4-tuples, keep determinant 1
        std::set<Key> expected;
        std::uint64_t q = 1ull << n;
        for (std::uint64_t a = 0; a < q; ++a)
            for (std::uint64_t b = 0; b < q; ++b)
                for (std::uint64_t g = 0; g < q; ++g)
                    for (std::uint64_t d = 0; d < q; ++d) {
                        FieldElement det = field_mul(fe(ctx, a), fe(ctx, d)) +
                                           field_mul(fe(ctx, b), fe(ctx, g));
                        if (det.is_one()) expected.insert({a, b, g, d});
                    }
        REQUIRE(expected.size() == order);

        std::set<Key> seen;
        for (std::uint64_t i = 0; i < order; ++i) {
            Sl2Element m = decode_index(ctx, BitVec::from_u64(i, 3 * n));
            CHECK(seen.insert(key_of(m)).second);
        }
        CHECK(seen == expected);
        CHECK_THROWS_AS(decode_index(ctx, BitVec::from_u64(order, 3 * n + 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("enumerate_sl2 matches the decode image and subgroup shapes") {
    auto ctx = FieldCtx::make(2);
    auto full = enumerate_sl2(ctx, Sl2Subgroup::full);
    CHECK(full.size() == 60);
    std::set<Key> keys;
    for (const auto& m : full) keys.insert(key_of(m));
    CHECK(keys.size() == 60);

    auto lower = enumerate_sl2(ctx, Sl2Subgroup::lower);
    CHECK(lower.size() == 12);
    for (const auto& m : lower) CHECK(m.gamma().is_zero());
    auto upper = enumerate_sl2(ctx, Sl2Subgroup::upper);
    CHECK(upper.size() == 12);
    for (const auto& m : upper) CHECK(m.beta().is_zero());

    CHECK_THROWS_AS(enumerate_sl2(FieldCtx::make(5), Sl2Subgroup::full), std::invalid_argument);
}

TEST_CASE("samples are uniform at n=2 by a chi-squared check") {
    auto ctx = FieldCtx::make(2);
    BitSource rng(101);
    const std::size_t samples = 1000000;
    std::map<Key, std::size_t> hist;
    for (std::size_t i = 0; i < samples; ++i) ++hist[key_of(random_element(ctx, rng))];
    REQUIRE(hist.size() == 60);

    double expect = double(samples) / 60.0;
    double chi2 = 0;
    for (auto& [k, c] : hist) {
        double d = double(c) - expect;
        chi2 += d * d / expect;
    }
    // 59 degrees of freedom: mean 59, variance 118
    CHECK(chi2 < 59.0 + 4.0 * std::sqrt(118.0));
    CHECK(chi2 > 59.0 - 4.0 * std::sqrt(118.0));
}

TEST_CASE("samples always satisfy the determinant invariant at n=8") {
    auto ctx = FieldCtx::make(8);
    BitSource rng(102);
    for (int i = 0; i < 100000; ++i) {
        auto s = sample_uniform(ctx, rng);
        FieldElement det = field_mul(s.element.alpha(), s.element.delta()) +
                           field_mul(s.element.beta(), s.element.gamma());
        REQUIRE(det.is_one());
        REQUIRE(s.bits_consumed >= 25);
        REQUIRE(s.bits_consumed % 25 == 0);
    }
}

TEST_CASE("sampling is deterministic in the seed") {
    auto ctx = FieldCtx::make(8);
    BitSource a(7), b(7);
    for (int i = 0; i < 100; ++i)
        CHECK(key_of(random_element(ctx, a)) == key_of(random_element(ctx, b)));
}

TEST_CASE("decompose multiplies back to its input") {
    BitSource rng(103);
    for (unsigned n : {1u, 2u, 3u, 8u, 16u}) {
        auto ctx = FieldCtx::make(n);
        for (int i = 0; i < 10000; ++i) {
            Sl2Element m = random_element(ctx, rng);
            GeneratorWord w = decompose(m);
            REQUIRE(w.size() <= 11);
            REQUIRE(w.product() == m);
        }
    }
}

TEST_CASE("decompose pinned cases") {
    auto ctx = FieldCtx::make(3);
    CHECK(decompose(Sl2Element::identity(ctx)).size() == 0);

    Sl2Element swap_m(fe(ctx, 0), fe(ctx, 1), fe(ctx, 1), fe(ctx, 0));
    GeneratorWord w = decompose(swap_m);
    REQUIRE(w.size() == 1);
    CHECK(w.factors()[0].kind == GeneratorKind::swap);

    // alpha = 0 branch never needs upper_unit; alpha != 0 never needs it either
    BitSource rng(104);
    for (int i = 0; i < 200; ++i) {
        GeneratorWord wd = decompose(random_element(ctx, rng));
        for (const auto& f : wd.factors()) CHECK(f.kind != GeneratorKind::upper_unit);
    }
}

TEST_CASE("triangular decompositions stay inside their generator sets") {
    auto ctx = FieldCtx::make(8);
    BitSource rng(105);

    // diag(r) is a single factor
    for (std::uint64_t v : {1ull, 2ull, 137ull}) {
        FieldElement r = fe(ctx, v);
        Sl2Element d(r, FieldElement::zero(ctx), FieldElement::zero(ctx), field_inv(r));
        GeneratorWord w = decompose_triangular(d, TriangularKind::lower);
        if (v == 1) {
            CHECK(w.size() == 0);
        } else {
            REQUIRE(w.size() == 1);
            CHECK(w.factors()[0].kind == GeneratorKind::diag);
            CHECK(*w.factors()[0].r == r);
        }
        CHECK(w.product() == d);
    }

    // (1 0; s 1) -> diag(t^-1) lower_unit diag(t) with t^2 = s
    FieldElement s = fe(ctx, 55);
    Sl2Element unit(FieldElement::one(ctx), s, FieldElement::zero(ctx), FieldElement::one(ctx));
    GeneratorWord w = decompose_triangular(unit, TriangularKind::lower);
    REQUIRE(w.size() == 3);
    CHECK(w.factors()[0].kind == GeneratorKind::diag);
    CHECK(w.factors()[1].kind == GeneratorKind::lower_unit);
    CHECK(w.factors()[2].kind == GeneratorKind::diag);
    CHECK(field_mul(*w.factors()[2].r, *w.factors()[2].r) == s);
    CHECK(field_mul(*w.factors()[0].r, *w.factors()[2].r).is_one());
    CHECK(w.product() == unit);

    for (int i = 0; i < 2000; ++i) {
        Sl2Element m = random_element(ctx, rng);
        if (!m.alpha().is_zero()) {
            Sl2Element lo(m.alpha(), m.beta(), FieldElement::zero(ctx), field_inv(m.alpha()));
            GeneratorWord wl = decompose_triangular(lo, TriangularKind::lower);
            CHECK(wl.product() == lo);
            for (const auto& f : wl.factors())
                CHECK((f.kind == GeneratorKind::diag || f.kind == GeneratorKind::lower_unit));

            Sl2Element up(m.alpha(), FieldElement::zero(ctx), m.gamma(), field_inv(m.alpha()));
            GeneratorWord wu = decompose_triangular(up, TriangularKind::upper);
            CHECK(wu.product() == up);
            for (const auto& f : wu.factors())
                CHECK((f.kind == GeneratorKind::diag || f.kind == GeneratorKind::upper_unit));
        }
    }

    Sl2Element swap_m(fe(ctx, 0), fe(ctx, 1), fe(ctx, 1), fe(ctx, 0));
    CHECK_THROWS_AS(decompose_triangular(swap_m, TriangularKind::lower), std::invalid_argument);
    CHECK_THROWS_AS(decompose_triangular(swap_m, TriangularKind::upper), std::invalid_argument);
}

TEST_CASE("pair action matches the matrix definition") {
    auto ctx = FieldCtx::make(4);
    BitSource rng(106);
    FieldElement a = fe(ctx, 9), b = fe(ctx, 14);

    auto [ia, ib] = act_on_pair(Sl2Element::identity(ctx), a, b);
    CHECK(ia == a);
    CHECK(ib == b);

    Sl2Element swap_m(fe(ctx, 0), fe(ctx, 1), fe(ctx, 1), fe(ctx, 0));
    auto [sa, sb] = act_on_pair(swap_m, a, b);
    CHECK(sa == b);
    CHECK(sb == a);

    FieldElement r = fe(ctx, 7);
    Sl2Element d(r, FieldElement::zero(ctx), FieldElement::zero(ctx), field_inv(r));
    auto [da, db] = act_on_pair(d, a, b);
    CHECK(da == field_mul(r, a));
    CHECK(db == field_mul(field_inv(r), b));

    auto other = FieldCtx::make(4);
    CHECK_THROWS_AS(act_on_pair(Sl2Element::identity(ctx), FieldElement::one(other), b),
                    std::invalid_argument);

    for (int i = 0; i < 500; ++i) {
        Sl2Element m = random_element(ctx, rng);
        Sl2Element k = random_element(ctx, rng);
        auto [xa, xb] = act_on_pair(m, a, b);
        CHECK(xa == field_mul(m.alpha(), a) + field_mul(m.gamma(), b));
        CHECK(xb == field_mul(m.beta(), a) + field_mul(m.delta(), b));
        // action is compatible with multiplication: (mk)(v) = m(k(v))
        auto [ka, kb] = act_on_pair(k, a, b);
        auto [mka, mkb] = act_on_pair(m, ka, kb);
        auto [pa, pb] = act_on_pair(m.mul(k), a, b);
        CHECK(pa == mka);
        CHECK(pb == mkb);
    }
}

TEST_CASE("full group mixes every nonzero pair uniformly") {
    for (unsigned n : {1u, 2u, 3u}) {
        MixingTable t = mixing_statistics(Sl2Subgroup::full, n);
        std::size_t pairs = (1ull << (2 * n)) - 1;
        REQUIRE(t.counts.size() == pairs);
        std::size_t uniform = t.group_size / pairs;
        CHECK(uniform * pairs == t.group_size);
        for (const auto& row : t.counts)
            for (std::size_t c : row) CHECK(c == uniform);
    }
}

TEST_CASE("lower triangular subgroup mixes within its two orbits") {
    // n=1: R1 = {(0,1)} is a fixed point
    MixingTable t1 = mixing_statistics(Sl2Subgroup::lower, 1);
    REQUIRE(t1.counts.size() == 3);
    CHECK(t1.counts[0][0] == t1.group_size);  // pair (0,1) stays put
    CHECK(t1.counts[0][1] == 0);
    CHECK(t1.counts[0][2] == 0);

    for (unsigned n : {1u, 2u, 3u, 4u}) {
        MixingTable t = mixing_statistics(Sl2Subgroup::lower, n);
        std::uint64_t q = 1ull << n;
        std::size_t r1 = q - 1;            // pairs with a = 0, b != 0
        std::size_t r2 = (q - 1) * q;      // pairs with a != 0
        REQUIRE(r1 + r2 == q * q - 1);
        for (std::uint64_t a = 0; a < q; ++a)
            for (std::uint64_t b = 0; b < q; ++b) {
                if (a == 0 && b == 0) continue;
                const auto& row = t.counts[(a << n | b) - 1];
                for (std::uint64_t a2 = 0; a2 < q; ++a2)
                    for (std::uint64_t b2 = 0; b2 < q; ++b2) {
                        if (a2 == 0 && b2 == 0) continue;
                        std::size_t c = row[(a2 << n | b2) - 1];
                        bool start_r1 = a == 0, target_r1 = a2 == 0;
                        if (start_r1 != target_r1)
                            CHECK(c == 0);  // orbits do not communicate
                        else if (start_r1)
                            CHECK(c == t.group_size / r1);
                        else
                            CHECK(c == t.group_size / r2);
                    }
            }
    }

    // upper variant swaps the roles: b = 0 row and column structure
    MixingTable tu = mixing_statistics(Sl2Subgroup::upper, 2);
    std::uint64_t q = 4;
    for (std::uint64_t b = 1; b < q; ++b) {
        const auto& row = tu.counts[(0 << 2 | b) - 1];
        std::size_t nonzero = 0;
        for (std::size_t c : row) nonzero += c != 0;
        CHECK(nonzero > 1);  // (0, b) does move under upper triangulars
    }
}

TEST_CASE("n=2 lower subgroup hits each target in the big orbit once") {
    MixingTable t = mixing_statistics(Sl2Subgroup::lower, 2);
    CHECK(t.group_size == 12);
    // start (a=1, b=0): every pair with a' != 0 reached exactly once
    const auto& row = t.counts[(1ull << 2 | 0) - 1];
    for (std::uint64_t a2 = 1; a2 < 4; ++a2)
        for (std::uint64_t b2 = 0; b2 < 4; ++b2) CHECK(row[(a2 << 2 | b2) - 1] == 1);
}
