#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kr/trunc_aut.hpp"

namespace kr {

// One verification campaign: a named property suite over `cases` random
// cases drawn deterministically from `seed` (see random_gen.hpp for the
// per-case derivation). degree bounds the random polynomial degrees; order
// is the formal truncation depth for the w-series suites.
struct RunConfig {
    RParams params{2, 2, 3};
    std::uint64_t seed = 7;
    unsigned cases = 20;
    unsigned degree = 8;
    unsigned order = 6;
};

struct CaseResult {
    unsigned index = 0;
    std::string input;
    bool pass = false;
    std::string note; // empty on pass, failure description otherwise
    long long us = 0; // wall time, excluded from the determinism contract
};

struct SuiteReport {
    std::string target;
    RParams params{2, 2, 3};
    std::uint64_t seed = 0;
    unsigned cases = 0;
    unsigned degree = 0;
    unsigned order = 0;
    std::vector<CaseResult> results;
    long long total_us = 0;

    bool all_pass() const {
        for (const CaseResult& r : results)
            if (!r.pass) return false;
        return true;
    }
};

// The supported suite names, in canonical order: lemma-hamilton, sigma,
// phi-hom, psi-hom, lift, extend, fixed-point.
const std::vector<std::string>& suite_targets();

// Runs the named suite. Cases run on a pool of KR_THREADS workers (default
// 1); results are ordered by case index regardless of scheduling. Unknown
// targets throw DomainError; per-case failures land in the report.
SuiteReport run_suite(const std::string& target, const RunConfig& cfg);

// Report as JSON with polynomials as canonical text. Timing fields ("ms")
// are emitted only when with_timing is set; everything else is a pure
// function of target, params, seed, cases, degree, and order.
nlohmann::json report_to_json(const SuiteReport& rep, bool with_timing = true);

} // namespace kr
