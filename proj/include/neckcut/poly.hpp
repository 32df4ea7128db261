#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "neckcut/errors.hpp"
#include "neckcut/rational.hpp"

namespace neckcut {

class VarTable;
using VarTablePtr = std::shared_ptr<const VarTable>;

// Ordered list of variable names. Shared by pointer between all polynomials
// of the same ring; mixing tables raises VarTableMismatch. The quotient
// variable, when a ring has one, is named "x" and must sit last.
class VarTable {
public:
    static VarTablePtr make(std::vector<std::string> names);
    // convenience: {"a1", ..., "an"} optionally followed by "x"
    static VarTablePtr coefficients(int n, bool with_x);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    bool has_trailing_x() const { return has_x_; }

    friend bool operator==(const VarTable& a, const VarTable& b) {
        return a.names_ == b.names_;
    }

private:
    explicit VarTable(std::vector<std::string> names);
    std::vector<std::string> names_;
    bool has_x_ = false;
};

inline bool same_table(const VarTablePtr& a, const VarTablePtr& b) {
    return a == b || (a && b && *a == *b);
}

// exponent vector, one entry per table variable
using Monomial = std::vector<std::uint32_t>;

// Graded order: total degree first; within a degree the trailing quotient
// variable x (when present) is most significant, then earlier table
// variables outrank later ones. Terms print in descending order, so
// "x^2 - a1*x - a2" comes out with the x power leading.
struct TermOrder {
    bool x_major = false;
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational, TermOrder>;

    explicit MultiPoly(VarTablePtr table);
    static MultiPoly constant(VarTablePtr table, const Rational& c);
    static MultiPoly variable(VarTablePtr table, std::string_view name);
    static MultiPoly monomial(VarTablePtr table, Monomial m, const Rational& c);
    static MultiPoly parse(VarTablePtr table, std::string_view text);

    const VarTablePtr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // the constant term (0 if absent); total poly must be constant for
    // callers that treat the result as the whole value
    Rational constant_value() const;
    bool is_integral() const; // every coefficient has denominator 1
    std::size_t term_count() const { return terms_.size(); }
    int total_degree() const; // 0 for the zero polynomial
    int degree_in(std::size_t var) const;
    Rational coefficient(const Monomial& m) const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly scaled(const Rational& c) const;
    MultiPoly pow(unsigned k) const; // p^0 = 1

    MultiPoly derivative(std::string_view var) const;
    // Substitute named variables by polynomials over a common target table.
    // Empty map: identity. Unbound variables must exist (same name) in the
    // target table.
    MultiPoly subst(const std::unordered_map<std::string, MultiPoly>& bindings) const;
    // Substitute every variable by a rational (all must be bound).
    Rational eval(const std::unordered_map<std::string, Rational>& values) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    std::string str() const;

private:
    void insert_term(Monomial m, const Rational& c); // accumulate + purge zero
    void require_same_table(const MultiPoly& o) const;

    VarTablePtr table_;
    TermMap terms_;
};

} // namespace neckcut
