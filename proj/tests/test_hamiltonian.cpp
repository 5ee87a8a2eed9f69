#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kr/hamiltonian.hpp"
#include "kr/parser.hpp"

using namespace kr;

namespace {

const VarTablePtr& T() { return VarTable::standard(); }
Polynomial P(const std::string& s) { return parse_polynomial(s, T()); }

Polynomial random_zt_poly(std::mt19937_64& rng, unsigned nterms, unsigned maxe) {
    Polynomial p(T());
    for (unsigned i = 0; i < nterms; ++i) {
        Monomial m(T()->size());
        m.set(var::z, unsigned(rng() % maxe));
        m.set(var::t, unsigned(rng() % maxe));
        long c = long(rng() % 18) - 9;
        if (c == 0) c = 1;
        p.add_term(m, Rational(c));
    }
    return p;
}

// Independent series oracle: images of z and t under exp(w*D_H) computed by
// raw iterated differentiation, without going through formal_flow.
std::pair<Polynomial, Polynomial> series_oracle(const Polynomial& H, unsigned N) {
    Polynomial hz = H.pdiff(var::z);
    Polynomial ht = H.pdiff(var::t);
    auto D = [&](const Polynomial& f) {
        return hz * f.pdiff(var::t) - ht * f.pdiff(var::z);
    };
    Polynomial w = P("w");
    Polynomial iz = P("z"), it = P("t");
    Polynomial dz = P("z"), dt = P("t");
    Rational fact(1);
    for (unsigned m = 1; m < N; ++m) {
        dz = D(dz);
        dt = D(dt);
        fact *= Rational(long(m));
        iz += w.pow(m) * dz * (Rational(1) / fact);
        it += w.pow(m) * dt * (Rational(1) / fact);
    }
    return {iz, it};
}

} // namespace

TEST_CASE("bracket on generators and hand expansions") {
    CHECK(bracket(P("z"), P("t")) == P("1"));
    Polynomial f = P("z^2*t + x*z - 3");
    CHECK(bracket(f, f).is_zero());
    // hand oracle: {z^2, t^3} = (2z)(3t^2) - 0*0 = 6*z*t^2
    Polynomial hand = P("2*z") * P("3*t^2");
    CHECK(bracket(P("z^2"), P("t^3")) == hand);
    CHECK(hand == P("6*z*t^2"));
    CHECK(bracket(P("t"), P("z")) == P("-1"));
}

TEST_CASE("apply_D matches the bracket with fixed first slot") {
    // D_{zt}(z) = H_z*0 - H_t*1 = -z; D_{zt}(t) = H_z*1 = t
    CHECK(apply_D(P("z*t"), P("z")) == P("-z"));
    CHECK(apply_D(P("z*t"), P("t")) == P("t"));
    Polynomial H = P("z^3 - 2*z*t + t^4");
    CHECK(apply_D(H, H).is_zero());
    CHECK(apply_D(P("x^2"), P("z")).is_zero());
}

TEST_CASE("Jacobi identity on random triples") {
    std::mt19937_64 rng(0x1ACB);
    for (int i = 0; i < 25; ++i) {
        Polynomial f = random_zt_poly(rng, 3, 3);
        Polynomial g = random_zt_poly(rng, 3, 3);
        Polynomial h = random_zt_poly(rng, 3, 3);
        Polynomial total = bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) +
                           bracket(h, bracket(f, g));
        CHECK(total.is_zero());
    }
}

TEST_CASE("Leibniz rule for the Hamiltonian derivation") {
    std::mt19937_64 rng(0x1EBF);
    for (int i = 0; i < 25; ++i) {
        Polynomial H = random_zt_poly(rng, 3, 3);
        Polynomial f = random_zt_poly(rng, 3, 3);
        Polynomial g = random_zt_poly(rng, 3, 3);
        CHECK(apply_D(H, f * g) == apply_D(H, f) * g + f * apply_D(H, g));
    }
}

TEST_CASE("formal flow images against the series oracle") {
    // flow of H in Q[x] is the identity
    FormalFlow id_flow = formal_flow(P("x^3 + 2*x"), 5);
    CHECK(id_flow.image_z == P("z"));
    CHECK(id_flow.image_t == P("t"));

    // H = t^2: D(z) = -2t, D^2(z) = 0, so the series is exact at every order
    FormalFlow f2 = formal_flow(P("t^2"), 7);
    CHECK(f2.image_z == P("z - 2*w*t"));
    CHECK(f2.image_t == P("t"));

    auto [oz, ot] = series_oracle(P("z*t"), 2);
    FormalFlow f3 = formal_flow(P("z*t"), 2);
    CHECK(f3.image_z == oz);
    CHECK(f3.image_t == ot);
    CHECK(f3.image_z == P("z - w*z"));
    CHECK(f3.image_t == P("t + w*t"));

    std::mt19937_64 rng(0xF10E);
    for (int i = 0; i < 10; ++i) {
        Polynomial H = random_zt_poly(rng, 3, 4);
        auto [ez, et] = series_oracle(H, 5);
        FormalFlow fl = formal_flow(H, 5);
        CHECK(fl.image_z == ez);
        CHECK(fl.image_t == et);
    }
}

TEST_CASE("flow Jacobian determinant is 1") {
    // hand oracle for H = zt at N=3: images are geometric exponential partial
    // sums z(1 - w + w^2/2) and t(1 + w + w^2/2); the determinant expands to
    // (1 - w + w^2/2)(1 + w + w^2/2) = 1 + w^4/4, which is 1 mod w^3
    Polynomial prod = P("1 - w + 1/2*w^2") * P("1 + w + 1/2*w^2");
    CHECK(prod == P("1 + 1/4*w^4"));
    FormalFlow f = formal_flow(P("z*t"), 3);
    CHECK(jacobian_det_flow(f) == P("1"));

    CHECK(jacobian_det_flow(formal_flow(P("5"), 4)) == P("1"));

    std::mt19937_64 rng(0x7AC0);
    for (int i = 0; i < 12; ++i) {
        Polynomial H = random_zt_poly(rng, 4, 4);
        CHECK(jacobian_det_flow(formal_flow(H, 6)) == P("1"));
    }
}

TEST_CASE("sigma sequence collapses as in the determinant computation") {
    std::mt19937_64 rng(0x516A);
    for (int i = 0; i < 10; ++i) {
        Polynomial H = random_zt_poly(rng, 3, 4);
        auto sigma = sigma_sequence(H, 5);
        REQUIRE(sigma.size() == 6);
        CHECK(sigma[0] == P("1"));
        for (unsigned n = 1; n < sigma.size(); ++n) CHECK(sigma[n].is_zero());
        for (unsigned n = 0; n + 1 < sigma.size(); ++n)
            CHECK(apply_D(H, sigma[n]) == sigma[n + 1]);
    }
}

TEST_CASE("truncated flow terminates and matches hand values") {
    TruncOrder d4(4);
    // j >= d kills every correction term
    CHECK(truncated_flow(P("z^2*t"), 4, d4).is_identity());
    CHECK(truncated_flow(P("z^2*t"), 7, d4).is_identity());

    TruncatedMap f = truncated_flow(P("z*t"), 1, TruncOrder(2));
    CHECK(f.image_z().poly() == P("z - x*z"));
    CHECK(f.image_t().poly() == P("t + x*t"));

    TruncatedMap g = truncated_flow(P("t^2"), 1, d4);
    CHECK(g.image_z().poly() == P("z - 2*x*t"));
    CHECK(g.image_t().poly() == P("t"));

    // x inside H rides along as a coefficient
    TruncatedMap h = truncated_flow(P("x*t^2"), 1, TruncOrder(3));
    CHECK(h.image_z().poly() == P("z - 2*x^2*t"));
    CHECK(h.image_t().poly() == P("t"));
}

TEST_CASE("truncated flow inverse and Jacobian") {
    std::mt19937_64 rng(0xF1F0);
    for (int i = 0; i < 10; ++i) {
        unsigned d = 2 + unsigned(rng() % 3);
        unsigned j = 1 + unsigned(rng() % d);
        Polynomial H = random_zt_poly(rng, 3, 3);
        TruncatedMap f = truncated_flow(H, j, TruncOrder(d));
        TruncatedMap b = truncated_flow(-H, j, TruncOrder(d));
        CHECK(compose(f, b).is_identity());
        CHECK(compose(b, f).is_identity());
        CHECK(jacobian_det(f) == TruncElem::one(T(), TruncOrder(d)));
        CHECK(in_Aj(f, j));
    }
}
