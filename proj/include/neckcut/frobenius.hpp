#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "neckcut/linalg.hpp"
#include "neckcut/poly.hpp"

namespace neckcut {

class AElement;
class TensorElement;

// The extension R[x]/(x^n - a1 x^(n-1) - ... - an) with the trace-like form
// eps(x^(n-1)) = 1, eps(x^k) = 0 for k < n-1. Construction computes and
// verifies the dual basis, the form matrix, and the genus-reduction term.
// A FrobSystem is a cheap handle over shared immutable state.
class FrobSystem {
public:
    // generic coefficients a1..an
    static FrobSystem universal(int n);
    // p(x) = x^n - pcoeffs[0] x^(n-1) - ... - pcoeffs[n-1], entries over `base`
    static FrobSystem make(VarTablePtr base, std::vector<MultiPoly> pcoeffs);
    // numeric system over the empty base table
    static FrobSystem numeric(const std::vector<Rational>& pcoeffs);

    int rank() const;
    const VarTablePtr& base() const;     // coefficient variables
    const VarTablePtr& extended() const; // base variables plus x
    const std::vector<MultiPoly>& pcoeffs() const;
    MultiPoly p_of_x() const; // x^n - a1 x^(n-1) - ... - an over extended()
    // set when the system came from specialize_roots
    const std::optional<std::vector<int>>& root_multiplicities() const;

    AElement zero() const;
    AElement one() const;
    AElement element(std::vector<MultiPoly> coeffs) const;
    AElement constant(const Rational& c) const;
    AElement x_power(unsigned k) const; // x^k reduced, any k >= 0
    // reduce a polynomial over extended() (or base()) mod p
    AElement reduce(const MultiPoly& q) const;

    MultiPoly epsilon(const AElement& u) const;
    std::vector<std::pair<AElement, AElement>> dual_basis() const;
    const PolyMatrix& frobenius_matrix() const;         // lambda: eps(x^(i+j-2))
    const PolyMatrix& frobenius_matrix_inverse() const; // closed form, verified

    TensorElement comultiply(const AElement& u) const; // sum x_i u (x) y_i
    TensorElement canonical_unit() const;              // sum x_i (x) y_i

    AElement genus_term() const; // g = sum x_i y_i = p'(x) mod p
    AElement g_power(unsigned i) const;
    // eps(mark * g^genus): the closed-surface evaluation
    MultiPoly closed_surface_eval(int genus, const AElement& mark) const;

    friend bool operator==(const FrobSystem& a, const FrobSystem& b);
    friend bool operator!=(const FrobSystem& a, const FrobSystem& b) { return !(a == b); }

private:
    struct Data;
    explicit FrobSystem(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
    friend class AElement;
    friend class TensorElement;
    friend TensorElement eps_tensor_mul(const TensorElement&, const TensorElement&);
    friend FrobSystem specialize_roots(const std::vector<int>&);
};

// Element of the rank-n extension, stored as coefficients over the base ring
// in the power basis 1, x, ..., x^(n-1).
class AElement {
public:
    AElement(FrobSystem system, std::vector<MultiPoly> coeffs);

    const FrobSystem& system() const { return sys_; }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }
    const MultiPoly& coeff(int k) const { return coeffs_.at(k); }
    bool is_zero() const;

    AElement operator-() const;
    AElement operator+(const AElement& o) const;
    AElement operator-(const AElement& o) const;
    AElement operator*(const AElement& o) const; // reduced mod p
    AElement scaled(const MultiPoly& c) const;
    AElement scaled(const Rational& c) const;
    AElement pow(unsigned k) const;

    friend bool operator==(const AElement& a, const AElement& b);
    friend bool operator!=(const AElement& a, const AElement& b) { return !(a == b); }

    MultiPoly to_poly() const; // over the extended table (with x)
    std::string str() const;

private:
    FrobSystem sys_;
    std::vector<MultiPoly> coeffs_;
};

using DualBasis = std::vector<std::pair<AElement, AElement>>;

// Element of A (x) A on the basis x^i (x) x^j, coefficients in the base ring.
class TensorElement {
public:
    explicit TensorElement(FrobSystem system);

    const FrobSystem& system() const { return sys_; }
    const std::map<std::pair<int, int>, MultiPoly>& terms() const { return terms_; }

    void add(int i, int j, const MultiPoly& c);
    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement scaled(const MultiPoly& c) const;
    TensorElement swapped() const; // a (x) b -> b (x) a

    friend bool operator==(const TensorElement& a, const TensorElement& b);
    friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

    bool is_zero() const { return terms_.empty(); }
    std::string str() const;

private:
    FrobSystem sys_;
    std::map<std::pair<int, int>, MultiPoly> terms_;
    friend TensorElement eps_tensor_mul(const TensorElement&, const TensorElement&);
};

// multiplication on A (x) A that contracts through the form:
// (a (x) b)(a' (x) b') = a eps(b a') (x) b'
TensorElement eps_tensor_mul(const TensorElement& s, const TensorElement& t);

// ------------------------------------------------------- specialized systems

// System over Z[alpha1..alpham] with p(x) = prod (x + alpha_i)^(k_i); the
// coefficients a_k specialize to minus the degree-k elementary symmetric
// polynomial of the root multiset.
FrobSystem specialize_roots(const std::vector<int>& multiplicities);

// True iff g^2 = 0 in the specialized system; verifies that g^2, g^3, g^4
// vanish together (all zero or all nonzero).
bool check_g_square_zero(const std::vector<int>& multiplicities);

// Product of local systems A_i = R[x]/((x + alpha_i)^(k_i)). Elements are
// per-factor coefficient vectors on the local power bases.
class ProductSystem {
public:
    using Element = std::vector<std::vector<MultiPoly>>;

    explicit ProductSystem(const std::vector<int>& multiplicities);

    int rank() const { return n_; }
    const VarTablePtr& base() const { return base_; }
    int factor_count() const { return static_cast<int>(mult_.size()); }
    int multiplicity(int i) const { return mult_.at(i); }
    // the local system of factor i; disengaged for multiplicity-1 factors,
    // which are plain copies of the base ring
    const std::optional<FrobSystem>& local_system(int i) const { return local_.at(i); }

    Element zero() const;
    Element one() const;
    bool is_zero(const Element& u) const;
    Element add(const Element& u, const Element& v) const;
    Element mul(const Element& u, const Element& v) const;
    MultiPoly eps_prime(const Element& u) const; // sum of local top coefficients
    const PolyMatrix& lambda_prime() const { return lambda_; } // block diagonal
    const Element& g_prime() const { return g_; } // (g_1, ..., g_m); 1 on simple factors

    // componentwise reduction of an element of the specialized system with
    // the same multiplicities (the CRT map on representatives)
    Element phi(const AElement& u) const;

    std::string str(const Element& u) const;

private:
    int n_;
    VarTablePtr base_;
    std::vector<int> mult_;
    std::vector<std::optional<FrobSystem>> local_;
    PolyMatrix lambda_;
    Element g_;
};

// Checks that the componentwise-reduction map from the specialized system to
// the product system is a ring map and carries the power basis to a basis
// (nonzero determinant over the root polynomial ring), so the product form
// pulls back to the specialized form.
bool crt_map_check(const std::vector<int>& multiplicities);

// Inverse of u in a numeric system (exact linear solve); NotInvertible when
// u is a zero divisor.
AElement a_invert(const AElement& u);

// The system with form eps_d(a) = eps(d a): dual basis {x_i, d^-1 y_i} and
// genus term d^-1 g. Numeric systems only (d must be invertible).
struct TwistedSystem {
    std::vector<Rational> form_values; // eps_d(x^k), k = 0..n-1
    DualBasis dual;                    // pairs (x_i, d^-1 y_i)
    std::vector<Rational> genus;       // coefficients of d^-1 g
};
TwistedSystem twist_system(const FrobSystem& sys, const AElement& d);

// For p(x) = prod (x + r_i) with distinct rational roots: push the form
// forward through the evaluation isomorphism A -> Q^n and check that the
// genus term maps to the genus term computed natively on Q^n from the
// pushed-forward form (Gram-matrix route).
bool pushforward_genus_check(const std::vector<Rational>& roots);

} // namespace neckcut
