#pragma once
// Symmetric polynomials in the root variables alpha1..alphaN: the monomial
// basis m_lambda indexed by partitions, the elementary and power-sum
// specialisations, products, and the elementary-basis decomposition given by
// the fundamental theorem of symmetric functions.

#include "neckcut/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace neckcut {

// A partition: weakly decreasing positive parts, tagged with the number of
// variables it will be expanded in.  At most nvars parts fit; trailing zeros
// are never stored.
class Partition {
public:
    // Sorts the parts, strips zeros, and checks the part count against nvars.
    static Partition make(std::vector<unsigned> parts, unsigned nvars);

    // Accepts the exponent notation "(2^1 1^3)" as well as plain part lists
    // such as "(2 1 1)"; "()" is the empty partition.
    static Partition parse(const std::string& text, unsigned nvars);

    const std::vector<unsigned>& parts() const { return parts_; }
    unsigned nvars() const { return nvars_; }
    unsigned weight() const;

    // Exponent vector padded with zeros to length nvars.
    std::vector<unsigned> padded() const;

    // Exponent notation, e.g. "(2^1 1^3)"; the empty partition prints "()".
    std::string str() const;

    bool operator==(const Partition& other) const;
    bool operator!=(const Partition& other) const { return !(*this == other); }
    // Total order: nvars first, then lexicographic on padded vectors.  The
    // lex-largest partition of a set is the elimination algorithm's leading
    // term.
    bool operator<(const Partition& other) const;

private:
    Partition(std::vector<unsigned> parts, unsigned nvars);

    std::vector<unsigned> parts_;
    unsigned nvars_ = 0;
};

// A symmetric polynomial written in the monomial basis: a finite sum of
// rational multiples of m_lambda.  The m_lambda form a basis, so this
// representation is canonical and equality is map equality.
class SymPoly {
public:
    static SymPoly zero(unsigned nvars);
    static SymPoly one(unsigned nvars);
    static SymPoly monomial(const Partition& lambda, const Rational& coeff = Rational(1));
    // Elementary symmetric polynomial e_k = m_(1^k); zero when k > nvars.
    static SymPoly e(unsigned k, unsigned nvars);
    // Power sum p_k = m_(k^1); p_0 = nvars by convention.
    static SymPoly p(unsigned k, unsigned nvars);

    unsigned nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Partition, Rational>& terms() const { return terms_; }
    Rational coefficient(const Partition& lambda) const;

    SymPoly operator+(const SymPoly& other) const;
    SymPoly operator-(const SymPoly& other) const;
    SymPoly scaled(const Rational& c) const;

    bool operator==(const SymPoly& other) const;
    bool operator!=(const SymPoly& other) const { return !(*this == other); }

    // Leading term first, e.g. "m_(2^1) - 2*m_(1^2)"; "0" when empty.
    std::string str() const;

    void add_term(const Partition& lambda, const Rational& coeff);

private:
    explicit SymPoly(unsigned nvars) : nvars_(nvars) {}

    unsigned nvars_ = 0;
    std::map<Partition, Rational> terms_;
};

// Variable tables used throughout: alpha1..alphaN for root variables and
// e1..eN for the elementary-basis target.
VarTablePtr alpha_table(unsigned nvars);
VarTablePtr elem_table(unsigned nvars);

// m_lambda as an explicit polynomial: the sum over all distinct permutations
// of the padded exponent vector, enumerated by multiset permutation.
MultiPoly monomial_expand(const Partition& lambda);

// Expands every m_lambda term of s.
MultiPoly expand(const SymPoly& s);

// Inverse of monomial_expand on symmetric inputs: greedy extraction by the
// lexicographically largest exponent vector.  Throws NotSymmetric if any
// adjacent-variable transposition changes p.
SymPoly to_monomial_basis(const MultiPoly& p);

// Product in the monomial basis (expand, multiply, recollect).
SymPoly sym_mul(const SymPoly& s, const SymPoly& t);

// A symmetric polynomial rewritten over e1..eN.
struct ElemPoly {
    MultiPoly expression;
};

// Classical leading-term elimination; the result is verified by substituting
// the monomial expansions of e_k back in and comparing with the input.
ElemPoly to_elementary_basis(const SymPoly& s);

// Checks p_a * e_b against the stated product identity.  Three cases apply:
// b = n gives m_((a+1)^1 1^(n-1)); a = 1, b < n gives
// m_(2^1 1^(b-1)) + (b+1)*m_(1^(b+1)); a > 1, b < n gives
// m_((a+1)^1 1^(b-1)) + m_(a^1 1^b).
bool verify_product_identities(unsigned a, unsigned b, unsigned n);

// All partitions of the given weight with at most nvars parts.
std::vector<Partition> all_partitions(unsigned weight, unsigned nvars);

}  // namespace neckcut
