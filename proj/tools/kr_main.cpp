#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kr/hamiltonian.hpp"
#include "kr/parser.hpp"
#include "kr/serialize.hpp"
#include "kr/verify.hpp"

using namespace kr;
using nlohmann::json;

namespace {

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw DomainError("cannot open output path: " + out);
    f << j.dump(2) << "\n";
}

json read_json_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw DomainError("cannot open input path: " + path);
        buf << f.rdbuf();
    }
    json j = json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) throw DomainError("input is not valid JSON: " + path);
    return j;
}

// Feed an emitted artifact back through the deserializers, re-running the
// construction checks; a mismatch anywhere is a hard failure.
void check_artifact(const json& art) {
    const VarTablePtr& table = VarTable::standard();
    const std::string kind = art.at("kind").get<std::string>();
    if (kind == "flow") {
        const unsigned d = art.at("d").get<unsigned>();
        const unsigned j = art.at("j").get<unsigned>();
        Polynomial H = parse_polynomial(art.at("H").get<std::string>(), table);
        TruncatedMap fl = truncated_flow(H, j, TruncOrder(d));
        if (to_text(fl.image_z().poly()) != art.at("images").at("z").get<std::string>() ||
            to_text(fl.image_t().poly()) != art.at("images").at("t").get<std::string>())
            throw DomainError("flow artifact images do not re-verify");
    } else if (kind == "lift") {
        const unsigned j = art.at("j").get<unsigned>();
        const unsigned target = art.at("target").get<unsigned>();
        Polynomial h = parse_polynomial(art.at("h").get<std::string>(), table);
        AutWord w = word_from_json(art.at("word"), table);
        if (truncate_word(w, TruncOrder(target)) != truncated_flow(h, j, TruncOrder(target)))
            throw DomainError("lifted word does not match its flow at the recorded depth");
    } else if (kind == "threefold-aut") {
        ThreefoldAut f = aut_from_json(art, table);
        if (aut_to_json(f) != art) throw DomainError("threefold-aut artifact does not round-trip");
    } else if (kind == "ambient-aut") {
        AmbientAut f = ambient_from_json(art, table);
        json core = ambient_to_json(f);
        for (auto it = core.begin(); it != core.end(); ++it)
            if (art.at(it.key()) != it.value())
                throw DomainError("ambient artifact does not round-trip at field " + it.key());
    } else {
        throw DomainError("unknown artifact kind: " + kind);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact automorphisms of the threefolds x^d*y + z^k + t^l + x = 0"};
    // --h is a documented Hamiltonian option, so help is --help only.
    app.set_help_flag("--help", "print usage");
    app.require_subcommand(1);

    unsigned d = 2, k = 2, l = 3;
    std::uint64_t seed = 7;
    unsigned cases = 20, degree = 8, order = 6;
    std::string out, target;

    CLI::App* v = app.add_subcommand("verify", "run a property suite and emit a JSON report");
    v->set_help_flag("--help", "print usage");
    v->add_option("target", target,
                  "lemma-hamilton | sigma | phi-hom | psi-hom | lift | extend | fixed-point")
        ->required();
    v->add_option("--d", d, "x-truncation exponent, >= 2");
    v->add_option("--k", k, "z-exponent of r");
    v->add_option("--l", l, "t-exponent of r, coprime to k");
    v->add_option("--seed", seed, "64-bit seed; fully determines the cases");
    v->add_option("--cases", cases, "number of random cases");
    v->add_option("--degree", degree, "total degree bound for random polynomials");
    v->add_option("--order", order, "formal truncation order for the w-series suites");
    v->add_option("--out", out, "write the report here instead of stdout");

    CLI::App* m = app.add_subcommand("make", "construct an artifact and emit it as JSON");
    m->set_help_flag("--help", "print usage");
    std::string kind, Htext, htext, gtext, stext, side, word_path;
    unsigned j = 1, match_target = 0;
    bool check = false;
    m->add_option("kind", kind, "flow | lift | threefold-aut | extend")->required();
    m->add_option("--H", Htext, "Hamiltonian polynomial (flow)");
    m->add_option("--h", htext, "Hamiltonian polynomial (lift)");
    m->add_option("--j", j, "flow parameter is x^j");
    m->add_option("--gamma", gtext, "multiplier gamma for the generator extension");
    m->add_option("--s", stext, "slice polynomial (threefold-aut with --lnd)");
    m->add_option("--lnd", side, "z or t: slice exponential side (threefold-aut)");
    m->add_option("--word", word_path, "word JSON path, or - for stdin (threefold-aut)");
    m->add_option("--target", match_target, "match depth for lift/extend (0 means d)");
    m->add_option("--d", d, "x-truncation exponent, >= 2");
    m->add_option("--k", k, "z-exponent of r");
    m->add_option("--l", l, "t-exponent of r, coprime to k");
    m->add_flag("--check", check, "feed the emitted artifact back through the verifier");
    m->add_option("--out", out, "write the artifact here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (v->parsed()) {
            RunConfig cfg;
            cfg.params = RParams(d, k, l);
            cfg.seed = seed;
            cfg.cases = cases;
            cfg.degree = degree;
            cfg.order = order;
            SuiteReport rep = run_suite(target, cfg);
            emit(report_to_json(rep), out);
            return rep.all_pass() ? 0 : 1;
        }

        const VarTablePtr& table = VarTable::standard();
        json art;
        if (kind == "flow") {
            if (Htext.empty()) throw DomainError("make flow requires --H");
            Polynomial H = parse_polynomial(Htext, table);
            TruncatedMap fl = truncated_flow(H, j, TruncOrder(d));
            art = json{{"kind", "flow"},
                       {"d", d},
                       {"j", j},
                       {"H", to_text(H)},
                       {"images",
                        {{"z", to_text(fl.image_z().poly())}, {"t", to_text(fl.image_t().poly())}}},
                       {"modulus", "x^" + std::to_string(d)}};
        } else if (kind == "lift") {
            if (htext.empty()) throw DomainError("make lift requires --h");
            Polynomial h = parse_polynomial(htext, table);
            AutWord w = match_target == 0
                            ? lift_hamiltonian(j, h, TruncOrder(d))
                            : lift_with_target_order(j, h, TruncOrder(d), TruncOrder(match_target));
            art = json{{"kind", "lift"},
                       {"d", d},
                       {"j", j},
                       {"h", to_text(h)},
                       {"target", match_target == 0 ? d : match_target},
                       {"word", word_to_json(w)}};
        } else if (kind == "threefold-aut") {
            Threefold X(RParams(d, k, l));
            if (!stext.empty() || !side.empty()) {
                LndSide sd;
                if (side == "z")
                    sd = LndSide::z_side;
                else if (side == "t")
                    sd = LndSide::t_side;
                else
                    throw DomainError("--lnd must be z or t");
                if (stext.empty()) throw DomainError("--lnd requires --s");
                art = aut_to_json(lnd_exponential(sd, parse_polynomial(stext, table), X));
            } else if (!word_path.empty()) {
                AutWord w = word_from_json(read_json_input(word_path), table);
                art = aut_to_json(lift_to_X(w, X));
            } else {
                throw DomainError("make threefold-aut requires --lnd with --s, or --word");
            }
        } else if (kind == "extend") {
            if (gtext.empty()) throw DomainError("make extend requires --gamma");
            Threefold X(RParams(d, k, l));
            Polynomial gamma = parse_polynomial(gtext, table);
            LambdaFamily fam = build_lambda_family(gamma, X, match_target);
            AmbientAut f = extend_generator(fam, X);
            art = ambient_to_json(f);
            art["gamma"] = to_text(gamma);
            art["target"] = fam.target;
        } else {
            throw DomainError("unknown artifact kind: " + kind);
        }

        emit(art, out);
        if (check) {
            try {
                check_artifact(art);
            } catch (const std::exception& e) {
                std::cerr << "check failed: " << e.what() << "\n";
                return 1;
            }
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed artifact: " << e.what() << "\n";
        return 2;
    }
}
