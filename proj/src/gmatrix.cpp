#include "neckcut/gmatrix.hpp"

#include <algorithm>

namespace neckcut {

namespace {

void require_rank(int n) {
    if (n < 2) throw RankTooSmall("genus-reduction matrices need rank >= 2, got " + std::to_string(n));
}

MultiPoly coeff_var(const VarTablePtr& table, int k) {
    return MultiPoly::variable(table, "a" + std::to_string(k));
}

}  // namespace

GMatrix::GMatrix(int n, PolyMatrix entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.rows() != n_ || entries_.cols() != n_) {
        throw InternalInconsistency("genus-reduction matrix shape does not match its rank");
    }
}

const MultiPoly& GMatrix::entry(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) {
        throw UsageError("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                         ") outside 1.." + std::to_string(n_));
    }
    return entries_.at(i - 1, j - 1);
}

GMatrix GMatrix::operator*(const GMatrix& other) const {
    if (n_ != other.n_) throw UsageError("product of genus-reduction matrices of different ranks");
    return GMatrix(n_, entries_ * other.entries_);
}

bool GMatrix::operator==(const GMatrix& other) const {
    return n_ == other.n_ && entries_ == other.entries_;
}

std::vector<std::vector<std::string>> GMatrix::entry_strings() const {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(n_);
    for (int i = 0; i < n_; ++i) {
        std::vector<std::string> row;
        row.reserve(n_);
        for (int j = 0; j < n_; ++j) row.push_back(entries_.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

GMatrix g_matrix_recursive(int n) {
    require_rank(n);
    VarTablePtr table = VarTable::coefficients(n, false);
    PolyMatrix m = PolyMatrix::zero(table, n, n);
    for (int i = 1; i < n; ++i) {
        m.at(i - 1, 0) = coeff_var(table, n - i).scaled(Rational(-i));
    }
    m.at(n - 1, 0) = MultiPoly::constant(table, Rational(n));
    for (int j = 2; j <= n; ++j) {
        for (int i = 1; i <= n; ++i) {
            MultiPoly cell = coeff_var(table, n - i + 1) * m.at(n - 1, j - 2);
            if (i > 1) cell += m.at(i - 2, j - 2);
            m.at(i - 1, j - 1) = std::move(cell);
        }
    }
    return GMatrix(n, std::move(m));
}

GMatrix g_matrix_operator(int n) {
    require_rank(n);
    FrobSystem sys = FrobSystem::universal(n);
    AElement g = sys.genus_term();
    PolyMatrix m = PolyMatrix::zero(sys.base(), n, n);
    for (int j = 1; j <= n; ++j) {
        AElement column = sys.x_power(static_cast<unsigned>(j - 1)) * g;
        for (int i = 1; i <= n; ++i) m.at(i - 1, j - 1) = column.coeff(i - 1);
    }
    return GMatrix(n, std::move(m));
}

SymGMatrix::SymGMatrix(int n, std::vector<SymPoly> cells) : n_(n), cells_(std::move(cells)) {
    if (cells_.size() != static_cast<std::size_t>(n_) * n_) {
        throw InternalInconsistency("symmetric-form matrix cell count does not match its rank");
    }
}

const SymPoly& SymGMatrix::entry(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) {
        throw UsageError("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                         ") outside 1.." + std::to_string(n_));
    }
    return cells_.at(static_cast<std::size_t>(i - 1) * n_ + (j - 1));
}

std::string SymGMatrix::str() const {
    std::vector<std::size_t> width(n_, 0);
    for (int j = 1; j <= n_; ++j)
        for (int i = 1; i <= n_; ++i)
            width[j - 1] = std::max(width[j - 1], entry(i, j).str().size());
    std::string out;
    for (int i = 1; i <= n_; ++i) {
        out += "[ ";
        for (int j = 1; j <= n_; ++j) {
            std::string cell = entry(i, j).str();
            cell.resize(width[j - 1], ' ');
            out += cell;
            out += (j < n_) ? "  " : " ";
        }
        out += "]";
        if (i < n_) out += "\n";
    }
    return out;
}

SymGMatrix g_matrix_symmetric(int n) {
    require_rank(n);
    const unsigned nv = static_cast<unsigned>(n);
    auto ones = [nv](unsigned count) {
        return Partition::make(std::vector<unsigned>(count, 1), nv);
    };
    auto hook = [nv](unsigned head, unsigned count) {
        std::vector<unsigned> parts(count, 1);
        parts.push_back(head);
        return Partition::make(std::move(parts), nv);
    };
    std::vector<SymPoly> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (j == 1) {
                cells.push_back(SymPoly::monomial(ones(nv - i), Rational(i)));
            } else if (j == 2) {
                cells.push_back(SymPoly::monomial(ones(nv - i + 1), Rational(-(n - i + 1))));
            } else {
                Rational sign((j - 1) % 2 == 0 ? 1 : -1);
                cells.push_back(SymPoly::monomial(hook(static_cast<unsigned>(j - 1), nv - i), sign));
            }
        }
    }
    return SymGMatrix(n, std::move(cells));
}

MultiPoly torus_eval(int n, int k) {
    require_rank(n);
    if (k < 0 || k >= n) {
        throw MarkDegreeOutOfRange("mark degree " + std::to_string(k) + " outside 0.." +
                                   std::to_string(n - 1));
    }
    GMatrix m = g_matrix_recursive(n);
    const MultiPoly& value = m.entry(n, k + 1);
    FrobSystem sys = FrobSystem::universal(n);
    AElement mark = sys.x_power(static_cast<unsigned>(k));
    MultiPoly direct = sys.epsilon(mark * sys.genus_term());
    MultiPoly closed = sys.closed_surface_eval(1, mark);
    if (value != direct || value != closed) {
        throw InternalInconsistency("torus evaluation disagrees with the operator route");
    }
    return value;
}

GMatrix g2_power(unsigned k) {
    if (k < 1) throw UsageError("matrix power must be >= 1");
    GMatrix g2 = g_matrix_recursive(2);
    GMatrix acc = g2;
    for (unsigned i = 1; i < k; ++i) acc = acc * g2;

    const VarTablePtr& table = g2.entries().at(0, 0).table();
    MultiPoly disc = MultiPoly::parse(table, "a1^2 + 4*a2").pow(k / 2);
    PolyMatrix expect =
        (k % 2 == 0) ? PolyMatrix::identity(table, 2).scaled(disc) : g2.entries().scaled(disc);
    if (acc.entries() != expect) {
        throw ClosedFormMismatch("power " + std::to_string(k) +
                                 " of the rank-2 matrix missed its closed form");
    }
    return acc;
}

}  // namespace neckcut
