#pragma once

#include <cstdint>
#include <vector>

#include "design2/bitvec.hpp"
#include "design2/field.hpp"

namespace design2 {

enum class BasisKind { polynomial, dual_of_polynomial, selfdual_gauss };

// Admissibility of n: 2n+1 prime and gcd(e, n) = 1 where e is the index
// of the subgroup generated by 2 inside the multiplicative group mod 2n+1.
struct AdmissibilityReport {
    unsigned n = 0;
    bool prime_ok = false;
    unsigned e = 0;  // 2n / ord(2 mod 2n+1); 0 when 2n+1 is not prime
    bool gcd_ok = false;
    bool admissible = false;
};

AdmissibilityReport check_admissible(unsigned n);

// A basis of GF(2^n) over GF(2), held as coordinate vectors in the
// polynomial basis of its FieldCtx. Coordinates are little-endian
// throughout: index i is the coefficient of basis element i+1.
class BasisSpec {
public:
    static BasisSpec polynomial(FieldCtxPtr ctx);
    static BasisSpec dual_of_polynomial(FieldCtxPtr ctx);

    BasisKind kind() const { return kind_; }
    const FieldCtxPtr& ctx() const { return ctx_; }
    unsigned n() const { return ctx_->n(); }
    const std::vector<FieldElement>& elements() const { return elements_; }
    const BitMatrix& W() const { return W_; }
    const FieldElement& generator() const { return generator_; }

    // Only for selfdual_gauss: elements() is in normal-basis order
    // (alpha^(2^j) at index j); exponent_order()[j] = k means
    // alpha^(2^j) = beta^k + beta^(-k) with 1 <= k <= n.
    const std::vector<unsigned>& exponent_order() const { return exponent_order_; }

    // Coordinates of y with respect to this basis: y = sum c_j elements[j].
    BitVec to_coords(const FieldElement& y) const;
    FieldElement from_coords(const BitVec& c) const;
    // Change-of-basis matrix: column j holds elements[j] in polynomial
    // coordinates. to_coords applies its inverse.
    const BitMatrix& basis_matrix() const { return basis_mat_; }

private:
    friend BasisSpec build_selfdual_basis(unsigned, MulStrategy, MulConfig);
    BasisSpec() = default;
    void finish_coordinates();

    BasisKind kind_ = BasisKind::polynomial;
    FieldCtxPtr ctx_;
    std::vector<FieldElement> elements_;
    BitMatrix W_;
    BitMatrix basis_mat_;
    BitMatrix basis_mat_inv_;
    FieldElement generator_;
    std::vector<unsigned> exponent_order_;
};

// Gauss-period self-dual normal basis {alpha^(2^j)} for admissible n,
// with alpha = beta + beta^(-1) for a primitive (2n+1)-th root of unity
// beta in GF(2^(2n)). The returned ctx uses the minimal polynomial of
// alpha as modulus, so alpha is the residue of x and the basis elements
// are its Frobenius orbit. Throws std::invalid_argument for
// non-admissible n; verifies W = I before returning.
BasisSpec build_selfdual_basis(unsigned n, MulStrategy strategy = MulStrategy::schoolbook,
                               MulConfig cfg = MulConfig{});

// Gram matrix W_jk = T(w_j w_k); symmetric, invertible. Recomputed from
// the elements (the BasisSpec caches the same matrix).
BitMatrix compute_W(const BasisSpec& basis);

// Matrix of multiplication by r in basis coordinates:
// mult_matrix(basis, r) * to_coords(y) = to_coords(r * y).
BitMatrix mult_matrix(const BasisSpec& basis, const FieldElement& r);

// Pascal-triangle conversion matrix: entries(i,j) = C(j, (j-i)/2) mod 2
// when i <= j and j - i even, else 0. Unit upper triangular.
struct LMatrix {
    unsigned k = 0;
    BitMatrix entries;
};

LMatrix l_matrix(unsigned k);

// In-place CNOT network for v := L_k v, as (control, target) pairs
// meaning v[target] ^= v[control]. Always has control > target; size
// O(k log k). General k is the restriction of the power-of-two network
// to the first k wires.
std::vector<std::pair<unsigned, unsigned>> l_network(unsigned k);

// Apply L_k (k = v.size()) via the network.
BitVec l_apply(const BitVec& v);

// Apply L_k^(-1) by running the network backwards.
BitVec l_inverse_apply(const BitVec& v);

}  // namespace design2
