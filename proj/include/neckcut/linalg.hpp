#pragma once

#include <optional>
#include <string>
#include <vector>

#include "neckcut/poly.hpp"

namespace neckcut {

// Dense matrix of exact polynomials (used for Frobenius matrices and the
// genus-reduction matrices). Entries share one variable table.
class PolyMatrix {
public:
    PolyMatrix(int rows, int cols, const MultiPoly& fill)
        : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, fill) {}
    static PolyMatrix zero(VarTablePtr table, int rows, int cols) {
        return PolyMatrix(rows, cols, MultiPoly(std::move(table)));
    }
    static PolyMatrix identity(VarTablePtr table, int n) {
        PolyMatrix m = zero(table, n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = MultiPoly::constant(m.at(0, 0).table(), Rational(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    MultiPoly& at(int i, int j) { return cells_.at(static_cast<std::size_t>(i) * cols_ + j); }
    const MultiPoly& at(int i, int j) const {
        return cells_.at(static_cast<std::size_t>(i) * cols_ + j);
    }

    PolyMatrix operator*(const PolyMatrix& o) const {
        if (cols_ != o.rows_) throw UsageError("matrix shape mismatch");
        PolyMatrix r = zero(at(0, 0).table(), rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k)
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) += at(i, k) * o.at(k, j);
        return r;
    }
    PolyMatrix scaled(const MultiPoly& c) const {
        PolyMatrix r = *this;
        for (auto& cell : r.cells_) cell = cell * c;
        return r;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
    }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    std::string str() const {
        std::vector<std::size_t> width(cols_, 0);
        for (int j = 0; j < cols_; ++j)
            for (int i = 0; i < rows_; ++i)
                width[j] = std::max(width[j], at(i, j).str().size());
        std::string out;
        for (int i = 0; i < rows_; ++i) {
            out += "[ ";
            for (int j = 0; j < cols_; ++j) {
                std::string cell = at(i, j).str();
                cell.resize(width[j], ' ');
                out += cell;
                out += (j + 1 < cols_) ? "  " : " ";
            }
            out += "]";
            if (i + 1 < rows_) out += "\n";
        }
        return out;
    }

private:
    int rows_, cols_;
    std::vector<MultiPoly> cells_;
};

// determinant by cofactor expansion; exact, fine for the small ranks here
inline MultiPoly poly_det(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw UsageError("determinant of non-square matrix");
    int n = m.rows();
    if (n == 0) return MultiPoly::constant(VarTable::make({}), Rational(1));
    if (n == 1) return m.at(0, 0);
    MultiPoly det(m.at(0, 0).table());
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        PolyMatrix minor = PolyMatrix::zero(m.at(0, 0).table(), n - 1, n - 1);
        for (int i = 1; i < n; ++i)
            for (int k = 0, col = 0; k < n; ++k)
                if (k != j) minor.at(i - 1, col++) = m.at(i, k);
        MultiPoly term = m.at(0, j) * poly_det(minor);
        if (j % 2 == 0) det += term;
        else det -= term;
    }
    return det;
}

// ---------------------------------------------------------------------------
// Exact Gaussian elimination over any field type with is_zero(), +,-,*,/ .
// Used with Rational and with rational functions of one variable.

// Reduce rows to reduced row echelon form in place. Returns the pivot column
// of each surviving row; rows beyond the returned rank are zeroed.
template <class F>
std::vector<int> rref(std::vector<std::vector<F>>& rows) {
    std::vector<int> pivots;
    if (rows.empty()) return pivots;
    std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        F inv = F(1) / rows[r][c];
        for (auto& v : rows[r]) v = v * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            F factor = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                rows[i][j] = rows[i][j] - factor * rows[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    rows.resize(r, std::vector<F>());
    return pivots;
}

// Solve the square system A v = b exactly; nullopt when A is singular.
template <class F>
std::optional<std::vector<F>> solve_square(std::vector<std::vector<F>> a,
                                           const std::vector<F>& b) {
    std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = rref(a);
    if (pivots.size() != n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (pivots[i] != static_cast<int>(i)) return std::nullopt;
    std::vector<F> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(a[i][n]);
    return v;
}

// Exact inverse of a square matrix; nullopt when singular.
template <class F>
std::optional<std::vector<std::vector<F>>> invert_square(std::vector<std::vector<F>> a) {
    std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i].push_back(i == j ? F(1) : F(0));
    std::vector<int> pivots = rref(a);
    if (pivots.size() != n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (pivots[i] != static_cast<int>(i)) return std::nullopt;
    std::vector<std::vector<F>> inv(n, std::vector<F>(n, F(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

} // namespace neckcut
