#include "doctest.h"

#include "neckcut/poly.hpp"
#include "support.hpp"

using namespace neckcut;
using neckcut::testing::rand_poly;
using neckcut::testing::rand_rational;

namespace {
VarTablePtr tbl() { return VarTable::make({"a1", "a2", "x"}); }
MultiPoly P(const VarTablePtr& t, const char* s) { return MultiPoly::parse(t, s); }
} // namespace

TEST_CASE("rational arithmetic stays canonical") {
    Rational a(1, 3), b(2, 6);
    CHECK(a == b);
    CHECK((a + b).str() == "2/3");
    CHECK(Rational(4, -6).str() == "-2/3");
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational::parse("-4/5").str() == "-4/5");
    CHECK(Rational(3, 4) * Rational(4, 3) == Rational(1));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), NotInvertible);
}

TEST_CASE("variable tables validate names") {
    CHECK_THROWS_AS(VarTable::make({"a1", "a1"}), UsageError);
    CHECK_THROWS_AS(VarTable::make({"x", "a1"}), UsageError); // x must be last
    auto t = tbl();
    CHECK(t->size() == 3);
    CHECK(t->index_of("a2") == 1);
    CHECK(!t->index_of("b"));
    CHECK_THROWS_AS(MultiPoly::variable(t, "b"), UnknownVariable);
}

TEST_CASE("parse and print round the documented format") {
    auto t = tbl();
    MultiPoly p = P(t, "3*a1^2*x - 4/5*a2");
    CHECK(p.str() == "3*a1^2*x - 4/5*a2");
    CHECK(MultiPoly::parse(t, p.str()) == p);

    CHECK(P(t, "x^2 - a1*x - a2").str() == "x^2 - a1*x - a2");
    CHECK(P(t, "2*x - a1").str() == "2*x - a1");
    // '*' is optional, whitespace free
    CHECK(P(t, "3a1^2x-4/5a2") == p);
    CHECK(P(t, " - a1 + a1 ").is_zero());
    CHECK(P(t, "0").str() == "0");
    CHECK(P(t, "x^0") == MultiPoly::constant(t, Rational(1)));
    CHECK(P(t, "7") == MultiPoly::constant(t, Rational(7)));

    CHECK_THROWS_AS(P(t, ""), ParseError);
    CHECK_THROWS_AS(P(t, "a1 +"), ParseError);
    CHECK_THROWS_AS(P(t, "q + 1"), ParseError);
    CHECK_THROWS_AS(P(t, "a1 ^"), ParseError);
    CHECK_THROWS_AS(P(t, "2 ** a1"), ParseError);
}

TEST_CASE("printing orders terms by degree with x most significant") {
    auto t = tbl();
    CHECK(P(t, "a2 + x^2 + a1*x").str() == "x^2 + a1*x + a2");
    CHECK(P(t, "-a2 - x^2").str() == "-x^2 - a2");
    CHECK(P(t, "a2^2 + a1*a2 + a1^2").str() == "a1^2 + a1*a2 + a2^2");
    // round trip on random polynomials
    std::mt19937 rng(20240811);
    for (int i = 0; i < 200; ++i) {
        MultiPoly p = rand_poly(rng, t);
        CHECK(MultiPoly::parse(t, p.str()) == p);
    }
}

TEST_CASE("schoolbook expansions match") {
    auto t = tbl();
    CHECK(P(t, "x - a1").pow(3).str() == "x^3 - 3*a1*x^2 + 3*a1^2*x - a1^3");
    CHECK((P(t, "a1 + a2") * P(t, "a1 - a2")).str() == "a1^2 - a2^2");
    CHECK(P(t, "x + 1").pow(4).str() == "x^4 + 4*x^3 + 6*x^2 + 4*x + 1");
    CHECK(P(t, "a1").pow(0) == MultiPoly::constant(t, Rational(1)));
}

TEST_CASE("ring axioms on random polynomials") {
    auto t = tbl();
    std::mt19937 rng(7);
    MultiPoly one = MultiPoly::constant(t, Rational(1));
    for (int i = 0; i < 200; ++i) {
        MultiPoly p = rand_poly(rng, t), q = rand_poly(rng, t), r = rand_poly(rng, t);
        CHECK(p + q == q + p);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * one == p);
        CHECK((p - p).is_zero());
        CHECK(p + MultiPoly(t) == p);
    }
}

TEST_CASE("canonical form never stores zero terms") {
    auto t = tbl();
    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = rand_poly(rng, t), q = rand_poly(rng, t);
        for (const auto& [m, c] : (p * q - q * p).terms()) { (void)m; CHECK(!c.is_zero()); }
        MultiPoly diff = p + q - q;
        CHECK(diff == p);
        for (const auto& [m, c] : diff.terms()) { (void)m; CHECK(!c.is_zero()); }
    }
}

TEST_CASE("derivative is linear and Leibniz") {
    auto t = tbl();
    CHECK(P(t, "3*a1^2*x - 4/5*a2").derivative("x").str() == "3*a1^2");
    CHECK(P(t, "3*a1^2*x - 4/5*a2").derivative("a2").str() == "-4/5");
    CHECK(P(t, "x^3").derivative("x").str() == "3*x^2");
    CHECK_THROWS_AS(P(t, "x").derivative("zz"), UnknownVariable);

    std::mt19937 rng(13);
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = rand_poly(rng, t), q = rand_poly(rng, t);
        CHECK((p * q).derivative("x") ==
              p.derivative("x") * q + p * q.derivative("x"));
        CHECK((p + q).derivative("a1") == p.derivative("a1") + q.derivative("a1"));
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    auto t = tbl();
    auto u = VarTable::make({"a1", "t"});
    std::unordered_map<std::string, MultiPoly> bind{
        {"x", MultiPoly::variable(u, "t")},
        {"a2", P(u, "a1^2 + 1")},
    };
    CHECK(P(t, "x^2 - a2").subst(bind).str() == "-a1^2 + t^2 - 1");
    // empty bindings: identity
    CHECK(P(t, "x^2 - a2").subst({}) == P(t, "x^2 - a2"));

    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = rand_poly(rng, t), q = rand_poly(rng, t);
        std::unordered_map<std::string, MultiPoly> b{
            {"x", rand_poly(rng, u)}, {"a2", rand_poly(rng, u)}};
        CHECK((p * q).subst(b) == p.subst(b) * q.subst(b));
        CHECK((p + q).subst(b) == p.subst(b) + q.subst(b));
    }

    std::unordered_map<std::string, MultiPoly> bad{{"zz", MultiPoly::variable(u, "t")}};
    CHECK_THROWS_AS(P(t, "x").subst(bad), UnknownVariable);
    auto v = VarTable::make({"t"});
    std::unordered_map<std::string, MultiPoly> missing{{"x", MultiPoly::variable(v, "t")}};
    // a1, a2 appear nowhere in the target table
    CHECK_THROWS_AS(P(t, "x + a1").subst(missing), UnboundVariable);
    std::unordered_map<std::string, MultiPoly> mixed{
        {"x", MultiPoly::variable(u, "t")}, {"a2", MultiPoly::variable(v, "t")}};
    CHECK_THROWS_AS(P(t, "x + a2").subst(mixed), VarTableMismatch);
}

TEST_CASE("evaluation agrees with substitution by constants") {
    auto t = tbl();
    std::unordered_map<std::string, Rational> at{
        {"a1", Rational(2)}, {"a2", Rational(-1, 2)}, {"x", Rational(3)}};
    CHECK(P(t, "3*a1^2*x - 4/5*a2").eval(at) == Rational(36) + Rational(2, 5));
    CHECK_THROWS_AS(P(t, "x").eval({{"a1", Rational(1)}, {"a2", Rational(1)}}),
                    UnboundVariable);
    CHECK_THROWS_AS(P(t, "x").eval({{"zz", Rational(1)}}), UnknownVariable);

    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = rand_poly(rng, t), q = rand_poly(rng, t);
        std::unordered_map<std::string, Rational> v{
            {"a1", rand_rational(rng)}, {"a2", rand_rational(rng)}, {"x", rand_rational(rng)}};
        CHECK((p * q).eval(v) == p.eval(v) * q.eval(v));
    }
}

TEST_CASE("cross-table operations are rejected") {
    auto t = tbl();
    auto u = VarTable::make({"a1", "t"});
    CHECK_THROWS_AS(P(t, "a1") + MultiPoly::variable(u, "a1"), VarTableMismatch);
    CHECK_THROWS_AS(P(t, "a1") * MultiPoly::variable(u, "t"), VarTableMismatch);
    // equal tables by value interoperate even as distinct instances
    auto t2 = VarTable::make({"a1", "a2", "x"});
    CHECK(P(t, "a1 + x") + MultiPoly::variable(t2, "a1") == P(t, "2*a1 + x"));
}

TEST_CASE("integrality predicate") {
    auto t = tbl();
    CHECK(P(t, "3*a1^2*x - 4*a2").is_integral());
    CHECK(!P(t, "3*a1^2*x - 4/5*a2").is_integral());
    CHECK(MultiPoly(t).is_integral());
}

TEST_CASE("degrees and constants") {
    auto t = tbl();
    CHECK(P(t, "3*a1^2*x - 4/5*a2").total_degree() == 3);
    CHECK(P(t, "3*a1^2*x - 4/5*a2").degree_in(2) == 1);
    CHECK(MultiPoly(t).total_degree() == 0);
    CHECK(P(t, "5/2").constant_value() == Rational(5, 2));
    CHECK(MultiPoly(t).constant_value() == Rational(0));
    CHECK_THROWS_AS(P(t, "x + 1").constant_value(), UsageError);
}
