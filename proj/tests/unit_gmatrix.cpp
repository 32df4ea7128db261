#include "doctest.h"

#include "neckcut/gmatrix.hpp"

using namespace neckcut;

namespace {

MultiPoly C(int n, const char* text) {
    return MultiPoly::parse(VarTable::coefficients(n, false), text);
}

void check_rows(const GMatrix& m, const std::vector<std::vector<const char*>>& rows) {
    REQUIRE(m.rank() == static_cast<int>(rows.size()));
    for (int i = 1; i <= m.rank(); ++i) {
        for (int j = 1; j <= m.rank(); ++j) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(m.entry(i, j) == C(m.rank(), rows[i - 1][j - 1]));
        }
    }
}

SymPoly sym(int n, std::vector<unsigned> parts, int coeff) {
    return SymPoly::monomial(Partition::make(std::move(parts), static_cast<unsigned>(n)),
                             Rational(coeff));
}

} // namespace

TEST_CASE("recursive rank-2 and rank-3 matrices match their displayed tables") {
    check_rows(g_matrix_recursive(2), {{"-a1", "2*a2"},
                                       {"2", "a1"}});
    check_rows(g_matrix_recursive(3), {{"-a2", "3*a3", "a1*a3"},
                                       {"-2*a1", "2*a2", "a1*a2 + 3*a3"},
                                       {"3", "a1", "a1^2 + 2*a2"}});
    CHECK_THROWS_AS(g_matrix_recursive(1), RankTooSmall);
}

TEST_CASE("recursive rank-4 matrix matches its displayed table") {
    check_rows(g_matrix_recursive(4),
               {{"-a3", "4*a4", "a1*a4", "a1^2*a4 + 2*a2*a4"},
                {"-2*a2", "3*a3", "a1*a3 + 4*a4", "a1^2*a3 + 2*a2*a3 + a1*a4"},
                {"-3*a1", "2*a2", "a1*a2 + 3*a3", "a1^2*a2 + 2*a2^2 + a1*a3 + 4*a4"},
                {"4", "a1", "a1^2 + 2*a2", "a1^3 + 3*a1*a2 + 3*a3"}});
}

TEST_CASE("recursive entries agree with the multiplication operator") {
    for (int n = 2; n <= 6; ++n) {
        CAPTURE(n);
        GMatrix rec = g_matrix_recursive(n);
        GMatrix op = g_matrix_operator(n);
        CHECK(rec == op);

        // trace consistency between the two constructions
        MultiPoly trace_rec(rec.entries().at(0, 0).table());
        MultiPoly trace_op(op.entries().at(0, 0).table());
        for (int i = 1; i <= n; ++i) {
            trace_rec += rec.entry(i, i);
            trace_op += op.entry(i, i);
        }
        CHECK(trace_rec == trace_op);
    }
}

TEST_CASE("columns read off multiplication by g on the power basis") {
    for (int n = 2; n <= 5; ++n) {
        FrobSystem sys = FrobSystem::universal(n);
        AElement g = sys.genus_term();
        GMatrix m = g_matrix_recursive(n);
        for (int i = 1; i <= n; ++i) CHECK(m.entry(i, 1) == g.coeff(i - 1));
        for (int j = 1; j <= n; ++j) {
            AElement col = sys.x_power(static_cast<unsigned>(j - 1)) * g;
            for (int i = 1; i <= n; ++i) CHECK(m.entry(i, j) == col.coeff(i - 1));
        }
    }
}

TEST_CASE("symmetric form matches the displayed rank-2 and rank-3 tables") {
    SymGMatrix s2 = g_matrix_symmetric(2);
    CHECK(s2.entry(1, 1) == sym(2, {1}, 1));
    CHECK(s2.entry(1, 2) == sym(2, {1, 1}, -2));
    CHECK(s2.entry(2, 1) == sym(2, {}, 2));
    CHECK(s2.entry(2, 2) == sym(2, {1}, -1));

    SymGMatrix s3 = g_matrix_symmetric(3);
    CHECK(s3.entry(1, 1) == sym(3, {1, 1}, 1));
    CHECK(s3.entry(1, 2) == sym(3, {1, 1, 1}, -3));
    CHECK(s3.entry(1, 3) == sym(3, {2, 1, 1}, 1));
    CHECK(s3.entry(2, 1) == sym(3, {1}, 2));
    CHECK(s3.entry(2, 2) == sym(3, {1, 1}, -2));
    CHECK(s3.entry(2, 3) == sym(3, {2, 1}, 1));
    CHECK(s3.entry(3, 1) == sym(3, {}, 3));
    CHECK(s3.entry(3, 2) == sym(3, {1}, -1));
    CHECK(s3.entry(3, 3) == sym(3, {2}, 1));

    SymGMatrix s4 = g_matrix_symmetric(4);
    CHECK(s4.entry(1, 2) == sym(4, {1, 1, 1, 1}, -4));
    CHECK(s4.entry(1, 4) == sym(4, {3, 1, 1, 1}, -1));
    CHECK(s4.entry(4, 4) == sym(4, {3}, -1));
    CHECK(s4.entry(2, 3) == sym(4, {2, 1, 1}, 1));

    CHECK_THROWS_AS(g_matrix_symmetric(1), RankTooSmall);
}

TEST_CASE("symmetric form agrees with root substitution into the recursive form") {
    for (int n = 2; n <= 5; ++n) {
        CAPTURE(n);
        GMatrix rec = g_matrix_recursive(n);
        SymGMatrix symform = g_matrix_symmetric(n);
        // a_k specializes to minus the k-th elementary symmetric polynomial
        std::unordered_map<std::string, MultiPoly> bindings;
        for (int k = 1; k <= n; ++k) {
            Partition ones = Partition::make(std::vector<unsigned>(k, 1), n);
            bindings.emplace("a" + std::to_string(k),
                             monomial_expand(ones).scaled(Rational(-1)));
        }
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                CAPTURE(i);
                CAPTURE(j);
                SymPoly converted = to_monomial_basis(rec.entry(i, j).subst(bindings));
                CHECK(converted == symform.entry(i, j));
            }
        }
    }
}

TEST_CASE("torus evaluations read the bottom row") {
    CHECK(torus_eval(2, 1) == C(2, "a1"));
    CHECK(torus_eval(3, 0) == C(3, "3"));
    CHECK(torus_eval(4, 3) == C(4, "a1^3 + 3*a1*a2 + 3*a3"));

    for (int n = 2; n <= 6; ++n) {
        FrobSystem sys = FrobSystem::universal(n);
        for (int k = 0; k < n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(torus_eval(n, k) ==
                  sys.closed_surface_eval(1, sys.x_power(static_cast<unsigned>(k))));
        }
    }

    CHECK_THROWS_AS(torus_eval(3, 3), MarkDegreeOutOfRange);
    CHECK_THROWS_AS(torus_eval(3, -1), MarkDegreeOutOfRange);
    CHECK_THROWS_AS(torus_eval(1, 0), RankTooSmall);
}

TEST_CASE("rank-2 powers hit their closed forms") {
    GMatrix g2 = g_matrix_recursive(2);
    CHECK(g2_power(1) == g2);

    GMatrix sq = g2_power(2);
    CHECK(sq.entry(1, 1) == C(2, "a1^2 + 4*a2"));
    CHECK(sq.entry(1, 2) == C(2, "0"));
    CHECK(sq.entry(2, 1) == C(2, "0"));
    CHECK(sq.entry(2, 2) == C(2, "a1^2 + 4*a2"));

    GMatrix fifth = g2_power(5);
    CHECK(fifth.entry(2, 1) == C(2, "2*a1^4 + 16*a1^2*a2 + 32*a2^2"));
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            CHECK(fifth.entry(i, j) == (C(2, "a1^4 + 8*a1^2*a2 + 16*a2^2") * g2.entry(i, j)));

    for (unsigned k = 1; k <= 8; ++k) CHECK_NOTHROW(g2_power(k));
    CHECK_THROWS_AS(g2_power(0), UsageError);
}

TEST_CASE("matrix api is one-based and prints aligned tables") {
    GMatrix m = g_matrix_recursive(2);
    CHECK_THROWS_AS(m.entry(0, 1), UsageError);
    CHECK_THROWS_AS(m.entry(1, 3), UsageError);

    auto strings = m.entry_strings();
    REQUIRE(strings.size() == 2);
    CHECK(strings[0][0] == "-a1");
    CHECK(strings[0][1] == "2*a2");
    CHECK(strings[1][0] == "2");
    CHECK(strings[1][1] == "a1");

    CHECK(m.str() == "[ -a1  2*a2 ]\n[ 2    a1   ]");
    CHECK(g_matrix_symmetric(2).str() ==
          "[ m_(1^1)  -2*m_(1^2) ]\n[ 2        -m_(1^1)   ]");
}
