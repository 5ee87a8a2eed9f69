#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kr/hamiltonian.hpp"
#include "kr/parser.hpp"
#include "kr/serialize.hpp"

using namespace kr;
using nlohmann::json;

namespace {

const VarTablePtr& T() { return VarTable::standard(); }
Polynomial P(const std::string& s) { return parse_polynomial(s, T()); }

} // namespace

TEST_CASE("word serialization round-trips every generator kind") {
    AutWord w(T(), {ZShear{P("x*t^2 - 3*t")}, Scale{rat(2, 3), rat(-1)}, TShear{P("z + x")},
                    ZShear{P("lambda*t")}});
    json j = word_to_json(w);
    REQUIRE(j.is_array());
    CHECK(j.size() == 4);
    CHECK(j[0]["kind"] == "zshear");
    CHECK(j[1]["kind"] == "scale");
    CHECK(j[1]["a"] == "2/3");
    CHECK(j[1]["b"] == "-1");

    AutWord back = word_from_json(j);
    CHECK(word_to_json(back) == j);
    auto [wz, wt] = word_images(w);
    auto [bz, bt] = word_images(back);
    CHECK(wz == bz);
    CHECK(wt == bt);

    CHECK(word_to_json(word_from_json(json::array())).empty());
}

TEST_CASE("word deserialization rejects malformed records") {
    CHECK_THROWS_AS(word_from_json(json{{"kind", "zshear"}}), DomainError);
    CHECK_THROWS_AS(word_from_json(json::array({json{{"kind", "spin"}, {"poly", "z"}}})),
                    DomainError);
    CHECK_THROWS_AS(word_from_json(json::array({json{{"kind", "zshear"}}})), DomainError);
    // shear polynomial touching the sheared variable
    CHECK_THROWS_AS(word_from_json(json::array({json{{"kind", "zshear"}, {"poly", "z"}}})),
                    DomainError);
    CHECK_THROWS_AS(word_from_json(json::array({json{{"kind", "zshear"}, {"poly", "(("}}})),
                    ParseError);
}

TEST_CASE("threefold automorphism artifacts round-trip and re-verify") {
    Threefold X(RParams{2, 2, 3});
    ThreefoldAut f = lnd_exponential(LndSide::z_side, P("t"), X);
    json j = aut_to_json(f);
    CHECK(j["kind"] == "threefold-aut");
    CHECK(j["params"]["d"] == 2);

    ThreefoldAut back = aut_from_json(j);
    CHECK(back.images() == f.images());
    CHECK(back.inverse_images() == f.inverse_images());
    CHECK(back.provenance() == f.provenance());
    CHECK(aut_to_json(back) == j);

    // Tampered images fail the construction checks on the way back in.
    json bad = j;
    bad["images"]["y"] = "y + 1";
    CHECK_THROWS_AS(aut_from_json(bad), DomainError);
    json wrong_kind = j;
    wrong_kind["kind"] = "ambient-aut";
    CHECK_THROWS_AS(ambient_from_json(wrong_kind), DomainError);
}

TEST_CASE("ambient automorphism artifacts carry their certificates") {
    Threefold X(RParams{2, 2, 3});
    AmbientAut f = extend_Ad(AutWord(T(), {ZShear{P("x^2")}}), X);
    json j = ambient_to_json(f);
    CHECK(j["kind"] == "ambient-aut");
    CHECK(j["quotient"] == "1");
    CHECK(j["beta"] == to_text(P("2*z + x^2")));

    AmbientAut back = ambient_from_json(j);
    CHECK(back.images() == f.images());
    CHECK(back.quotient() == f.quotient());
    CHECK(ambient_to_json(back) == j);

    json bad = j;
    bad["quotient"] = "2";
    CHECK_THROWS_AS(ambient_from_json(bad), DomainError);
    json missing = j;
    missing.erase("alpha");
    CHECK_THROWS_AS(ambient_from_json(missing), DomainError);
}

TEST_CASE("torus and generator extensions survive the JSON round-trip") {
    Threefold X(RParams{2, 2, 3});
    AmbientAut tor = extend_torus(rat(3, 2), X);
    AmbientAut tor2 = ambient_from_json(ambient_to_json(tor));
    CHECK(tor2.quotient() == tor.quotient());
    CHECK(tor2.images() == tor.images());

    LambdaFamily fam = build_lambda_family(P("1"), X);
    AmbientAut gen = extend_generator(fam, X);
    AmbientAut gen2 = ambient_from_json(ambient_to_json(gen));
    CHECK(gen2.images() == gen.images());
    CHECK(gen2.apply(X.P) == X.P);
}
