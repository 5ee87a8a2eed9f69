#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "kr/hamiltonian.hpp"
#include "kr/parser.hpp"
#include "kr/serialize.hpp"

using namespace kr;
using nlohmann::json;

namespace {

const VarTablePtr& T() { return VarTable::standard(); }
Polynomial P(const std::string& s) { return parse_polynomial(s, T()); }

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cmd(const std::string& cmd) {
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, n);
    const int status = pclose(p);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

RunResult run_cli(const std::string& args) {
    return run_cmd(std::string(KR_BIN_PATH) + " " + args);
}

json strip_timing(const json& j) {
    if (j.is_object()) {
        json out = json::object();
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "ms") out[it.key()] = strip_timing(it.value());
        return out;
    }
    if (j.is_array()) {
        json out = json::array();
        for (const json& e : j) out.push_back(strip_timing(e));
        return out;
    }
    return j;
}

} // namespace

TEST_CASE("make flow emits the truncated flow with its modulus") {
    RunResult r = run_cli("make flow --H \"z*t\" --j 1 --d 2");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["kind"] == "flow");
    CHECK(j["modulus"] == "x^2");
    CHECK(P(j["images"]["z"].get<std::string>()) == P("z - x*z"));
    CHECK(P(j["images"]["t"].get<std::string>()) == P("t + x*t"));
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("verify lemma-hamilton --d 2 --k 2 --l 4 --cases 2").code == 2);
    CHECK(run_cli("verify no-such-suite --cases 1").code == 2);
    CHECK(run_cli("make flow --j 1 --d 2").code == 2);          // missing --H
    CHECK(run_cli("make flow --H \"z*(\" --j 1 --d 2").code == 2); // parse error
    CHECK(run_cli("make extend --gamma \"y\" --d 2 --k 2 --l 3").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("verify runs a suite and reports every case") {
    RunResult r = run_cli("verify lemma-hamilton --d 2 --k 2 --l 3 --seed 7 --cases 5");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["cases"] == 5);
    REQUIRE(j["results"].size() == 5);
    for (const json& c : j["results"]) {
        CHECK(c["pass"] == true);
        CHECK(c.contains("input"));
        CHECK(c.contains("ms"));
    }
}

TEST_CASE("reports are deterministic for a fixed seed, including across pools") {
    const std::string args = "verify lift --d 3 --k 2 --l 3 --seed 11 --cases 4";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    json ja = strip_timing(json::parse(a.out));
    json jb = strip_timing(json::parse(b.out));
    CHECK(ja == jb);

    // scheduling independence: a two-worker pool reports the same cases
    RunResult c = run_cmd("KR_THREADS=2 " + std::string(KR_BIN_PATH) + " " + args);
    REQUIRE(c.code == 0);
    CHECK(strip_timing(json::parse(c.out)) == ja);
}

TEST_CASE("make lift passes its own check and the word re-verifies here") {
    RunResult r = run_cli("make lift --h \"z*t\" --j 1 --d 3 --check");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["kind"] == "lift");
    CHECK(j["target"] == 3);
    AutWord w = word_from_json(j["word"]);
    CHECK(truncate_word(w, TruncOrder(3)) == truncated_flow(P("z*t"), 1, TruncOrder(3)));
}

TEST_CASE("make extend emits a certified ambient artifact") {
    RunResult r = run_cli("make extend --gamma \"1\" --d 2 --k 2 --l 3 --check");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["kind"] == "ambient-aut");
    CHECK(j["quotient"] == "1");
    CHECK(j["gamma"] == "1");
    AmbientAut f = ambient_from_json(j);
    Threefold X(RParams{2, 2, 3});
    CHECK(f.apply(X.P) == X.P);
}

TEST_CASE("make threefold-aut from a slice exponential and from a word file") {
    RunResult r = run_cli("make threefold-aut --lnd z --s \"t\" --d 2 --k 2 --l 3");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    ThreefoldAut f = aut_from_json(j);
    Threefold X(RParams{2, 2, 3});
    CHECK(f.images() == lnd_exponential(LndSide::z_side, P("t"), X).images());

    AutWord w(T(), {ZShear{P("x^2")}});
    {
        std::ofstream file("cli_word_input.json");
        file << word_to_json(w).dump();
    }
    RunResult r2 = run_cli("make threefold-aut --word cli_word_input.json --d 2 --k 2 --l 3");
    REQUIRE(r2.code == 0);
    ThreefoldAut g = aut_from_json(json::parse(r2.out));
    CHECK(g.images() == lift_to_X(w, X).images());
    std::remove("cli_word_input.json");
}

TEST_CASE("artifacts can be written to a file instead of stdout") {
    RunResult r = run_cli("make flow --H \"t\" --j 1 --d 2 --out cli_flow_out.json");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f("cli_flow_out.json");
    REQUIRE(f.good());
    json j = json::parse(f);
    CHECK(j["kind"] == "flow");
    f.close();
    std::remove("cli_flow_out.json");
}
