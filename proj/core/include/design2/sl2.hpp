#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "design2/field.hpp"
#include "design2/rng.hpp"

namespace design2 {

// Element of SL2(GF(2^n)) with the layout
//   ( alpha gamma )
//   ( beta  delta ),
// determinant alpha*delta + beta*gamma = 1 (checked at construction).
class Sl2Element {
public:
    Sl2Element(FieldElement alpha, FieldElement beta, FieldElement gamma, FieldElement delta);
    static Sl2Element identity(const FieldCtxPtr& ctx);

    const FieldElement& alpha() const { return alpha_; }
    const FieldElement& beta() const { return beta_; }
    const FieldElement& gamma() const { return gamma_; }
    const FieldElement& delta() const { return delta_; }
    const FieldCtxPtr& ctx() const { return alpha_.ctx(); }

    Sl2Element mul(const Sl2Element& rhs) const;
    bool operator==(const Sl2Element& other) const;

private:
    FieldElement alpha_, beta_, gamma_, delta_;
};

// The four generator shapes used by the decompositions:
//   diag(r)    = (r 0; 0 r^-1)   for nonzero r
//   lower_unit = (1 0; 1 1)
//   upper_unit = (1 1; 0 1)
//   swap       = (0 1; 1 0)
enum class GeneratorKind { diag, lower_unit, upper_unit, swap };

struct Generator {
    GeneratorKind kind;
    std::optional<FieldElement> r;  // set exactly for diag

    Sl2Element matrix(const FieldCtxPtr& ctx) const;
};

// Word of generators whose left-to-right matrix product is the element it
// was derived from.
class GeneratorWord {
public:
    explicit GeneratorWord(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {}

    const FieldCtxPtr& ctx() const { return ctx_; }
    const std::vector<Generator>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }

    void push_diag(const FieldElement& r);  // r must be nonzero
    void push(GeneratorKind kind);          // non-diag kinds only

    Sl2Element product() const;

private:
    FieldCtxPtr ctx_;
    std::vector<Generator> factors_;
};

// Decode an index in [0, 2^(3n) - 2^n) into a group element; a bijection.
// Low-order layout: indices below (2^n - 1)*2^(2n) pick alpha nonzero
// (alpha index in the high bits, then gamma, then beta), the rest pick
// alpha = 0 with beta forced to gamma^-1.
Sl2Element decode_index(const FieldCtxPtr& ctx, const BitVec& index);

struct Sl2Sample {
    Sl2Element element;
    std::size_t bits_consumed;  // bits drawn for this sample, rejections included
};

// Exactly uniform over all 2^(3n) - 2^n elements: draw 3n+1 bits, reject
// values outside twice the group order, fold, decode.
Sl2Sample sample_uniform(const FieldCtxPtr& ctx, BitSource& rng);

GeneratorWord decompose(const Sl2Element& m);

enum class TriangularKind { lower, upper };

// Words restricted to {diag, lower_unit} resp. {diag, upper_unit}.
// Lower-triangular means gamma = 0; upper-triangular means beta = 0.
GeneratorWord decompose_triangular(const Sl2Element& m, TriangularKind which);

// (a', b') = (alpha a + gamma b, beta a + delta b).
std::pair<FieldElement, FieldElement> act_on_pair(const Sl2Element& m, const FieldElement& a,
                                                  const FieldElement& b);

enum class Sl2Subgroup { full, lower, upper };

// All elements of the subgroup; feasible only for small n (capped at 4).
std::vector<Sl2Element> enumerate_sl2(const FieldCtxPtr& ctx, Sl2Subgroup subgroup);

// Exact orbit counts of the subgroup action on nonzero pairs:
// counts[i][j] = number of subgroup elements taking pair i+1 to pair j+1,
// pairs encoded as (a_bits << n) | b_bits of the coordinate vectors.
struct MixingTable {
    unsigned n = 0;
    std::size_t group_size = 0;
    std::vector<std::vector<std::size_t>> counts;
};

MixingTable mixing_statistics(Sl2Subgroup subgroup, unsigned n);

}  // namespace design2
