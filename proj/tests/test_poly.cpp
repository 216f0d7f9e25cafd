#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "symred/poly.hpp"

using namespace symred;

namespace {

Poly P(const std::string& s) {
    static SymbolTable stu = SymbolTable::stu();
    return parse_poly(s, &stu);
}

VarId X(int k) { return schwinger_var(k); }

}  // namespace

TEST_CASE("arithmetic basics") {
    CHECK(P("x1") + P("x2") == P("x1+x2"));
    CHECK(P("x1+x2") + Poly::zero() == P("x1+x2"));
    CHECK(P("x1+x2") + P("-x2") == P("x1"));
    CHECK(P("x1+x2") * P("x1-x2") == P("x1^2-x2^2"));
    CHECK(P("x1*x2+3*x3") * Poly::constant(1) == P("x1*x2+3*x3"));
    CHECK((P("x1+x2") - P("x1+x2")).is_zero());
}

TEST_CASE("partial derivative and evaluation") {
    CHECK(P("x1*x2+x3").partial(X(1)) == P("x2"));
    CHECK(P("x1*x2+x3").eval_zero(X(1)) == P("x3"));
    CHECK(P("x1*x2+x3").eval_zero(X(7)) == P("x1*x2+x3"));
    CHECK(P("x1^2*x2+x1").degree_in(X(1)) == 2);
    CHECK(P("x1^2*x2+x1").degree_in(X(2)) == 1);
    CHECK(P("x1^2*x2+x1").degree_in(X(9)) == 0);
    CHECK(Poly::zero().degree_in(X(1)) == 0);
    // d/dx1 of psi(C3) = 1
    CHECK(P("x1+x2+x3").partial(X(1)) == Poly::constant(1));
}

TEST_CASE("syntactic predicates") {
    CHECK(P("7/3").is_constant());
    CHECK(P("4*x1*x2^2").is_monomial());
    CHECK_FALSE(P("x1+x2").is_monomial());
    CHECK_FALSE(P("x1+x2").is_constant());
    CHECK(Poly::zero().is_constant());
}

TEST_CASE("eval_rational") {
    std::map<uint32_t, Rational> assign;
    assign[X(1).code()] = Rational(2);
    assign[X(2).code()] = Rational(1, 3);
    CHECK(P("x1^2*x2").eval_rational(assign) == Rational(4, 3));
    CHECK_THROWS_AS((void)P("x1*x3").eval_rational(assign), std::invalid_argument);
}

TEST_CASE("canonical form") {
    Poly p = P("2*x1+2*x2");
    CHECK(p.canonical() == P("x1+x2"));
    CHECK(P("-x1+x2").canonical() == P("x1-x2"));
    CHECK(P("x2-x1").canonical() == P("x1-x2"));
    CHECK(P("2/3*x1-4/3*x2").canonical() == P("x1-2*x2"));
    CHECK(Poly::zero().canonical().is_zero());
    CHECK(P("x1+x2").is_canonical());
}

TEST_CASE("exact division") {
    Poly prod = P("x1+x2") * P("x1^2+x3");
    auto q = prod.divide_exact(P("x1+x2"));
    REQUIRE(q.has_value());
    CHECK(*q == P("x1^2+x3"));
    CHECK_FALSE(P("x1^2+x2").divide_exact(P("x1+x2")).has_value());
}

TEST_CASE("printer and parser round trip") {
    SymbolTable stu = SymbolTable::stu();
    for (const char* text : {"x1+x2", "x1^2-x2^2", "3*s*x1*x2 - 2*t*x3 + 1/2",
                             "msq3*x3+x1", "s1*x2-u*x4"}) {
        Poly p = parse_poly(text, &stu);
        Poly q = parse_poly(p.str(&stu), &stu);
        CHECK(p == q);
    }
    CHECK_THROWS_AS(parse_poly("x1 + + x2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("y+1"), std::invalid_argument);
}

TEST_CASE("graded-lex term order is deterministic") {
    Poly p = P("x3+x1*x2+x2^2+1");
    CHECK(p.str() == "x1*x2 + x2^2 + x3 + 1");
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(12345);
    std::vector<VarId> vars{X(1), X(2), X(3), kinematic_var(0)};
    for (int it = 0; it < 60; ++it) {
        Poly a = oracle::random_poly(vars, 3, 2, rng);
        Poly b = oracle::random_poly(vars, 3, 2, rng);
        Poly c = oracle::random_poly(vars, 3, 2, rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("partial and eval_zero are linear; Leibniz rule") {
    std::mt19937_64 rng(777);
    std::vector<VarId> vars{X(1), X(2), X(3)};
    for (int it = 0; it < 40; ++it) {
        Poly a = oracle::random_poly(vars, 4, 3, rng);
        Poly b = oracle::random_poly(vars, 4, 3, rng);
        VarId v = vars[it % vars.size()];
        CHECK((a + b).partial(v) == a.partial(v) + b.partial(v));
        CHECK((a + b).eval_zero(v) == a.eval_zero(v) + b.eval_zero(v));
        CHECK((a * b).partial(v) == a.partial(v) * b + a * b.partial(v));
        CHECK((a * b).eval_zero(v) == a.eval_zero(v) * b.eval_zero(v));
    }
}

TEST_CASE("eval_rational is multiplicative") {
    std::mt19937_64 rng(31337);
    std::vector<VarId> vars{X(1), X(2), X(3)};
    std::uniform_int_distribution<int> val(-4, 4);
    for (int it = 0; it < 40; ++it) {
        Poly a = oracle::random_poly(vars, 3, 2, rng);
        Poly b = oracle::random_poly(vars, 3, 2, rng);
        std::map<uint32_t, Rational> assign;
        for (auto v : vars) {
            Rational r(val(rng), 1 + (it % 3));
            r.canonicalize();
            assign[v.code()] = r;
        }
        CHECK((a * b).eval_rational(assign) ==
              a.eval_rational(assign) * b.eval_rational(assign));
    }
}
