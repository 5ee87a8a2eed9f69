#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kr/parser.hpp"
#include "kr/polynomial.hpp"

using namespace kr;

namespace {

const VarTablePtr& T() { return VarTable::standard(); }

Polynomial P(const std::string& s) { return parse_polynomial(s, T()); }

// Deterministic sparse polynomial: up to `nterms` monomials with exponents
// below `maxe` in x, z, t and coefficients in {-9..9}\{0}.
Polynomial random_poly(std::mt19937_64& rng, unsigned nterms, unsigned maxe) {
    Polynomial p(T());
    for (unsigned i = 0; i < nterms; ++i) {
        Monomial m(T()->size());
        m.set(var::x, unsigned(rng() % maxe));
        m.set(var::z, unsigned(rng() % maxe));
        m.set(var::t, unsigned(rng() % maxe));
        long c = long(rng() % 18) - 9;
        if (c == 0) c = 1;
        p.add_term(m, Rational(c));
    }
    return p;
}

} // namespace

TEST_CASE("addition matches hand-computed sums") {
    CHECK(P("z + t") + P("z - t") == P("2*z"));
    Polynomial p = P("x^2*y + 3*z*t - 1/2");
    CHECK(p + Polynomial(T()) == p);
    CHECK(P("z^2 - t^2") + P("t^2") == P("z^2"));
}

TEST_CASE("multiplication matches hand-computed products") {
    CHECK(P("z + t") * P("z - t") == P("z^2 - t^2"));
    Polynomial p = P("x^2*y + z^2 + t^3 + x");
    CHECK(p * Polynomial::constant(T(), 1) == p);
    CHECK(P("z - t") * P("z^2 + z*t + t^2") == P("z^3 - t^3"));
}

TEST_CASE("pdiff on monomials and on z^k + t^l + x") {
    CHECK(P("z^2*t^3").pdiff(var::z) == P("2*z*t^3"));
    CHECK(P("x").pdiff(var::z).is_zero());
    CHECK(P("z^2 + t^3 + x").pdiff(var::t) == P("3*t^2"));
    CHECK(P("z^3 + t^5 + x").pdiff(var::t) == P("5*t^4"));
    CHECK(P("z^3 + t^5 + x").pdiff(var::z) == P("3*z^2"));
}

TEST_CASE("integrate is a right inverse of pdiff") {
    CHECK(P("z^2").integrate(var::z) == P("1/3*z^3"));
    Polynomial p = P("3*z^2*t - 7*t^4 + 2");
    CHECK(p.integrate(var::t).pdiff(var::t) == p);
    CHECK(p.integrate(var::z).pdiff(var::z) == p);
}

TEST_CASE("substitute performs simultaneous substitution") {
    Polynomial p = P("x^2*y + z^2 + t^3 + x");
    std::map<std::size_t, Polynomial> kill_y{{var::y, Polynomial(T())}};
    CHECK(p.substitute(kill_y) == P("z^2 + t^3 + x"));

    std::map<std::size_t, Polynomial> ident{{var::z, P("z")}, {var::t, P("t")}};
    CHECK(p.substitute(ident) == p);

    // z and t swap in parallel, not sequentially
    std::map<std::size_t, Polynomial> swap_zt{{var::z, P("t")}, {var::t, P("z")}};
    CHECK(P("z^2*t").substitute(swap_zt) == P("t^2*z"));

    std::map<std::size_t, Polynomial> shift{{var::z, P("z + x^2")}};
    CHECK(P("z^2").substitute(shift) == P("z^2 + 2*x^2*z + x^4"));
}

TEST_CASE("evaluate at rational points") {
    Polynomial p = P("x^2*y + z^2 + t^3 + x");
    std::map<std::size_t, Rational> origin{
        {var::x, 0}, {var::y, 0}, {var::z, 0}, {var::t, 0}};
    CHECK(p.evaluate(origin) == 0);
    CHECK(Polynomial::constant(T(), 1).evaluate({}) == 1);
    std::map<std::size_t, Rational> pt{{var::z, rat(1, 2)}, {var::t, rat(1, 3)}};
    CHECK(P("z + t").evaluate(pt) == rat(5, 6));
    CHECK_THROWS_AS(P("z + t").evaluate({{var::z, 1}}), DomainError);
}

TEST_CASE("division by a divisor monic in a variable") {
    CHECK(exact_div(P("z^2 - t^2"), P("z - t"), var::z) == P("z + t"));
    CHECK(exact_div(P("z^2 + t^3"), P("z^2 + t^3"), var::z) == P("1"));

    DivisionResult r = divide_by_monic(P("z"), P("z^2 + t^3"), var::z);
    CHECK(r.quotient.is_zero());
    CHECK(r.remainder == P("z"));
    CHECK_THROWS_AS(exact_div(P("z"), P("z^2 + t^3"), var::z), DomainError);

    // nonzero constant divisor
    CHECK(exact_div(P("3*z + 6"), P("3"), var::z) == P("z + 2"));
    // not monic in z
    CHECK_THROWS_AS(divide_by_monic(P("z"), P("2*z"), var::z), DomainError);
    CHECK_THROWS_AS(divide_by_monic(P("z"), Polynomial(T()), var::z), DomainError);

    // remainder has lower z-degree and reconstruction holds
    Polynomial p = P("z^4*t + 3*z^2 - t^5 + x*z");
    Polynomial q = P("z^2 + t^3 + x");
    DivisionResult d = divide_by_monic(p, q, var::z);
    CHECK(d.quotient * q + d.remainder == p);
    CHECK(d.remainder.degree_in(var::z) < 2);
}

TEST_CASE("parse accepts the grammar and rejects malformed text") {
    CHECK(P("x^2*y + z^2 + t^3 + x") ==
          Polynomial::variable(T(), var::x).pow(2) * Polynomial::variable(T(), var::y) +
              Polynomial::variable(T(), var::z).pow(2) +
              Polynomial::variable(T(), var::t).pow(3) + Polynomial::variable(T(), var::x));
    CHECK(P("0").is_zero());
    CHECK(P("5/3") == Polynomial::constant(T(), rat(5, 3)));
    CHECK(P("-2*z") == P("0 - 2*z"));
    CHECK(P("-z") == -P("z"));
    CHECK(P("z - -2") == P("z + 2"));
    CHECK(P(" z\n+ t ") == P("z + t"));

    CHECK_THROWS_AS(P(""), ParseError);
    CHECK_THROWS_AS(P("z +"), ParseError);
    CHECK_THROWS_AS(P("z^0"), ParseError);
    CHECK_THROWS_AS(P("z^"), ParseError);
    CHECK_THROWS_AS(P("1/0"), ParseError);
    CHECK_THROWS_AS(P("q + 1"), ParseError);
    CHECK_THROWS_AS(P("z z"), ParseError);
    CHECK_THROWS_AS(P("(z)"), ParseError);

    try {
        P("z +\n* t");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 1);
    }
}

TEST_CASE("printing is canonical and stable") {
    CHECK(to_text(P("t + z")) == "z + t");
    CHECK(to_text(P("x + z^2 + t^3 + x^2*y")) == "x^2*y + t^3 + z^2 + x");
    CHECK(to_text(Polynomial(T())) == "0");
    CHECK(to_text(P("-z")) == "-1*z");
    CHECK(to_text(P("-z + t")) == "-1*z + t");
    CHECK(to_text(P("z - t")) == "z - t");
    CHECK(to_text(P("-5/2*z^2*t + 1")) == "-5/2*z^2*t + 1");
    CHECK(to_text(P("z - 1")) == "z - 1");
    CHECK(to_text(P("-3")) == "-3");
    CHECK(to_text(P("x*z*t")) == "x*z*t");
}

TEST_CASE("ring axioms hold on random triples") {
    std::mt19937_64 rng(0xA11CE5);
    for (int i = 0; i < 40; ++i) {
        Polynomial a = random_poly(rng, 4, 4);
        Polynomial b = random_poly(rng, 4, 4);
        Polynomial c = random_poly(rng, 4, 4);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("pdiff is a derivation on random pairs") {
    std::mt19937_64 rng(0xB0B);
    for (int i = 0; i < 40; ++i) {
        Polynomial a = random_poly(rng, 4, 4);
        Polynomial b = random_poly(rng, 4, 4);
        CHECK((a * b).pdiff(var::z) == a.pdiff(var::z) * b + a * b.pdiff(var::z));
        CHECK((a * b).pdiff(var::t) == a.pdiff(var::t) * b + a * b.pdiff(var::t));
    }
}

TEST_CASE("substitute is a ring homomorphism on random pairs") {
    std::mt19937_64 rng(0xC0FFEE);
    for (int i = 0; i < 25; ++i) {
        Polynomial a = random_poly(rng, 3, 3);
        Polynomial b = random_poly(rng, 3, 3);
        std::map<std::size_t, Polynomial> s{{var::z, random_poly(rng, 2, 2)},
                                            {var::t, random_poly(rng, 2, 2)}};
        CHECK((a * b).substitute(s) == a.substitute(s) * b.substitute(s));
        CHECK((a + b).substitute(s) == a.substitute(s) + b.substitute(s));
    }
}

TEST_CASE("exact division inverts multiplication by a monic divisor") {
    std::mt19937_64 rng(0xD1CE);
    for (int i = 0; i < 25; ++i) {
        Polynomial p = random_poly(rng, 4, 4);
        Polynomial q = Polynomial::variable(T(), var::z).pow(3) + random_poly(rng, 3, 2);
        if (q.degree_in(var::z) != 3 || !q.coeff_of(var::z, 3).is_constant()) continue;
        if (q.coeff_of(var::z, 3).constant_term() != 1) continue;
        CHECK(exact_div(p * q, q, var::z) == p);
    }
}

TEST_CASE("parse and print round-trip on random polynomials") {
    std::mt19937_64 rng(0xF00D);
    for (int i = 0; i < 60; ++i) {
        Polynomial p = random_poly(rng, 6, 5);
        CHECK(parse_polynomial(to_text(p), T()) == p);
    }
}

TEST_CASE("coefficient extraction and truncation") {
    Polynomial p = P("x^2*y + z^2 + t^3 + x");
    CHECK(p.coeff_of(var::x, 2) == P("y"));
    CHECK(p.coeff_of(var::x, 0) == P("z^2 + t^3"));
    CHECK(p.coeff_of(var::x, 1) == P("1"));
    CHECK(p.truncate_at(var::x, 2) == P("z^2 + t^3 + x"));
    CHECK(p.truncate_at(var::x, 1) == P("z^2 + t^3"));
    CHECK(p.truncate_at(var::x, 3) == p);

    auto parts = p.collect(var::x);
    CHECK(parts.size() == 3);
    CHECK(parts.at(0) == P("z^2 + t^3"));
    CHECK(parts.at(1) == P("1"));
    CHECK(parts.at(2) == P("y"));

    CHECK(p.degree_in(var::x) == 2);
    CHECK(p.degree_in(var::y) == 1);
    CHECK(p.total_degree() == 3);
    CHECK(p.constant_term() == 0);
    CHECK(P("z + 7").constant_term() == 7);
}

TEST_CASE("variable tables must match") {
    auto other = VarTable::with_extras({"u"});
    Polynomial a = parse_polynomial("z + t", other);
    CHECK_THROWS_AS(P("z") + a, DomainError);
    CHECK_THROWS_AS(P("z") * a, DomainError);
}

TEST_CASE("monomial order is graded lex with earlier variables heavier") {
    // degree dominates
    CHECK(to_text(P("z^3 + z*t")) == "z^3 + z*t");
    // same degree: x beats y beats z beats t
    CHECK(to_text(P("t^2 + z*t + x*t + y*t")) == "x*t + y*t + z*t + t^2");
    CHECK(to_text(P("z^2*t + z*t^2")) == "z^2*t + z*t^2");
}

TEST_CASE("pow and scalar arithmetic") {
    CHECK(P("z + t").pow(0) == P("1"));
    CHECK(P("z + t").pow(3) == P("z^3 + 3*z^2*t + 3*z*t^2 + t^3"));
    CHECK(P("z") * rat(3, 2) == P("3/2*z"));
    CHECK(rat(-1) * P("z") == P("-z"));
    CHECK((-P("z - t")) == P("t - z"));
}
