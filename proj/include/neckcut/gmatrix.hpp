#pragma once
// The genus-reduction matrix G_n: the matrix of multiplication by g on the
// power basis of R[x]/(p(x)).  Built three ways — by the recursive entry
// rules, from the multiplication operator directly, and in symmetric-function
// closed form — plus the torus evaluations read off its last row and the
// closed forms for powers of G_2.

#include "neckcut/frobenius.hpp"
#include "neckcut/symfun.hpp"

#include <string>
#include <vector>

namespace neckcut {

// Column j holds the coefficients of x^(j-1) * g reduced mod p(x); entries
// are polynomials in a1..an.  Accessors are 1-based to match the (i,j)
// conventions of the entry formulas.
class GMatrix {
public:
    GMatrix(int n, PolyMatrix entries);

    int rank() const { return n_; }
    const PolyMatrix& entries() const { return entries_; }
    const MultiPoly& entry(int i, int j) const;  // 1-based

    GMatrix operator*(const GMatrix& other) const;
    bool operator==(const GMatrix& other) const;
    bool operator!=(const GMatrix& other) const { return !(*this == other); }

    std::string str() const { return entries_.str(); }
    std::vector<std::vector<std::string>> entry_strings() const;

private:
    int n_;
    PolyMatrix entries_;
};

// Entries built strictly by the recursive rules: g_{i,1} = -i * a_{n-i} for
// i < n, g_{n,1} = n, g_{i,j} = a_{n-i+1} * g_{n,j-1} + g_{i-1,j-1} for
// j > 1 (with the i = 1 case degenerating to a_n * g_{n,j-1}).
GMatrix g_matrix_recursive(int n);

// Independent construction: column j = coefficient vector of x^(j-1) * g in
// the rank-n universal system.  Oracle for g_matrix_recursive.
GMatrix g_matrix_operator(int n);

// The same matrix with entries written as signed monomial symmetric
// polynomials in the roots.
class SymGMatrix {
public:
    SymGMatrix(int n, std::vector<SymPoly> cells);

    int rank() const { return n_; }
    const SymPoly& entry(int i, int j) const;  // 1-based
    std::string str() const;

private:
    int n_;
    std::vector<SymPoly> cells_;  // row-major
};

// Closed-form pattern: column 1 entry i is i * m_(1^(n-i)); column 2 entry i
// is -(n-i+1) * m_(1^(n-i+1)); column j >= 3 entry i is
// (-1)^(j-1) * m_((j-1)^1 1^(n-i)).
SymGMatrix g_matrix_symmetric(int n);

// eps(x^k * g) = entry (n, k+1) of G_n; checked against the closed-surface
// evaluation of a genus-1 surface marked x^k.
MultiPoly torus_eval(int n, int k);

// (G_2)^k by repeated multiplication, checked against the closed forms
// (a1^2 + 4 a2)^(k/2) * I for even k and (a1^2 + 4 a2)^((k-1)/2) * G_2 for
// odd k.
GMatrix g2_power(unsigned k);

}  // namespace neckcut
