#pragma once

#include <gmpxx.h>

#include <string>

#include "kr/errors.hpp"

namespace kr {

// Exact arbitrary-precision rational. All coefficient arithmetic in the
// toolkit is exact; there is no floating point anywhere.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p" or "p/q" with optional leading sign on p. q must be positive.
inline Rational parse_rational(const std::string& text) {
    try {
        Rational q(text);
        q.canonicalize();
        if (q.get_den() < 0) throw DomainError("rational with negative denominator: " + text);
        return q;
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational literal: " + text);
    }
}

// Canonical "p" / "p/q" form (mpq keeps gcd(p,q)=1, q>0).
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_pow(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return out; // base canonical => base^e canonical
}

} // namespace kr
