#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kr/aut_word.hpp"
#include "kr/polynomial.hpp"

namespace kr {

// Case-level randomness for the verification suites. Case i of a run seeded
// with s draws from mt19937_64 seeded with s XOR (0x9e3779b97f4a7c15*(i+1)),
// so cases are independent of scheduling order and any single case can be
// replayed in isolation from the report alone.
inline std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

// Uniform over {-9..9} minus 0: one draw from 18 equally likely values.
inline Rational random_coeff(std::mt19937_64& rng) {
    long c = long(rng() % 18) - 9;
    return Rational(c >= 0 ? c + 1 : c);
}

// Degree cap for one variable of the sampling box.
struct VarBound {
    std::size_t v;
    unsigned max;
};

// Sparse polynomial with `terms` box-uniform monomial draws (duplicates
// merge) and coefficients from random_coeff. Draws whose total degree
// exceeds total_cap are redrawn (total_cap 0 means uncapped); a draw is
// abandoned after 64 attempts, so an over-tight cap yields fewer terms
// rather than a loop.
inline Polynomial random_polynomial(std::mt19937_64& rng, const VarTablePtr& table,
                                    const std::vector<VarBound>& box, unsigned terms,
                                    unsigned total_cap = 0) {
    Polynomial p(table);
    for (unsigned n = 0; n < terms; ++n) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Monomial m(table->size());
            unsigned total = 0;
            for (const VarBound& b : box) {
                unsigned e = unsigned(rng() % (b.max + 1));
                m.set(b.v, e);
                total += e;
            }
            if (total_cap != 0 && total > total_cap) continue;
            p.add_term(m, random_coeff(rng));
            break;
        }
    }
    return p;
}

// Random word in the x^d-multiplied shears. Composing a z-shear whose body
// depends on t with a t-shear whose body depends on z multiplies image
// degrees by the body degrees, so an unrestricted length-3 word can push
// w(z^k + t^l + x) past any budget (alternating quadratic bodies at
// (k,l) = (3,5) measured in minutes). One shear per word may carry the
// crossing variable to degree 2; the rest stay linear in it.
inline AutWord random_shear_word(std::mt19937_64& rng, const VarTablePtr& table, unsigned d,
                                 unsigned len) {
    const Polynomial xd = Polynomial::variable(table, var::x).pow(d);
    std::vector<Generator> gens;
    gens.reserve(len);
    unsigned cross_budget = 2;
    for (unsigned i = 0; i < len; ++i) {
        const bool zside = rng() % 2 == 1;
        const std::size_t free_var = zside ? var::t : var::z;
        Polynomial f = random_polynomial(rng, table, {{var::x, 1}, {free_var, cross_budget}}, 2);
        if (f.is_zero()) f = Polynomial::constant(table, 1);
        if (f.degree_in(free_var) > 1) cross_budget = 1;
        if (zside)
            gens.push_back(ZShear{xd * f});
        else
            gens.push_back(TShear{xd * f});
    }
    return AutWord(table, gens);
}

// As random_polynomial over z,t only, with every monomial nonconstant: a
// sample from the ideal (z,t) in Q[z,t].
inline Polynomial random_zt_ideal(std::mt19937_64& rng, const VarTablePtr& table, unsigned maxdeg,
                                  unsigned terms) {
    Polynomial p(table);
    for (unsigned n = 0; n < terms; ++n) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Monomial m(table->size());
            m.set(var::z, unsigned(rng() % (maxdeg + 1)));
            m.set(var::t, unsigned(rng() % (maxdeg + 1)));
            if (m.degree() == 0 || m.degree() > maxdeg) continue;
            p.add_term(m, random_coeff(rng));
            break;
        }
    }
    return p;
}

} // namespace kr
