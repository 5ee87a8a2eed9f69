#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kr/monomial.hpp"
#include "kr/rational.hpp"
#include "kr/vartable.hpp"

namespace kr {

// Immutable-in-spirit sparse multivariate polynomial with exact rational
// coefficients. Terms are kept in ascending graded-lex order with no zero
// coefficients; equality is structural equality of the term maps.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    explicit Polynomial(VarTablePtr table) : table_(std::move(table)) {
        if (!table_) throw DomainError("polynomial without variable table");
    }

    static Polynomial constant(const VarTablePtr& table, const Rational& c);
    static Polynomial variable(const VarTablePtr& table, std::size_t v);
    static Polynomial variable(const VarTablePtr& table, const std::string& name);
    static Polynomial monomial(const VarTablePtr& table, const Monomial& m, const Rational& c);

    const VarTablePtr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    // Value of the constant term (0 if absent).
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;

    unsigned total_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
    unsigned degree_in(std::size_t v) const;
    bool contains_var(std::size_t v) const { return degree_in(v) > 0; }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator*=(const Rational& c);
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Partial derivative.
    Polynomial pdiff(std::size_t v) const;
    // Monomial-wise antiderivative in v with zero constant of integration.
    Polynomial integrate(std::size_t v) const;

    // Simultaneous substitution; unbound variables map to themselves.
    Polynomial substitute(const std::map<std::size_t, Polynomial>& bindings) const;
    // Substitution with `reduce` applied between Horner steps, so that
    // intermediate products never leave the reduced ring (e.g. truncation
    // mod x^d). reduce must be a ring-map-compatible projection.
    Polynomial substitute_reduced(const std::map<std::size_t, Polynomial>& bindings,
                                  const std::function<Polynomial(const Polynomial&)>& reduce) const;
    // Full evaluation; every variable occurring in the polynomial must be bound.
    Rational evaluate(const std::map<std::size_t, Rational>& point) const;

    // Coefficient of v^e, as a polynomial with the v-exponent removed.
    Polynomial coeff_of(std::size_t v, unsigned e) const;
    // View as a univariate polynomial in v: exponent -> coefficient.
    std::map<unsigned, Polynomial> collect(std::size_t v) const;

    // Drops every term whose v-exponent is >= bound.
    Polynomial truncate_at(std::size_t v, unsigned bound) const;

    // Term insertion for builders; accumulates and drops zeros.
    void add_term(const Monomial& m, const Rational& c);

private:
    VarTablePtr table_;
    TermMap terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

struct DivisionResult {
    Polynomial quotient;
    Polynomial remainder;
};

// Division by q monic in v (leading v-coefficient is the constant 1), or by a
// nonzero constant q. The identity p = quotient*q + remainder holds exactly
// and deg_v(remainder) < deg_v(q).
DivisionResult divide_by_monic(const Polynomial& p, const Polynomial& q, std::size_t v);

// Exact quotient; throws DomainError when the remainder is nonzero.
Polynomial exact_div(const Polynomial& p, const Polynomial& q, std::size_t v);

} // namespace kr
