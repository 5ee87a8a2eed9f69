#pragma once

#include <utility>

#include "kr/polynomial.hpp"

namespace kr {

// Truncation order for the ring Q[x]/(x^d)[z,t].
struct TruncOrder {
    unsigned d;
    explicit TruncOrder(unsigned d_) : d(d_) {
        if (d < 2) throw DomainError("truncation order must be at least 2");
    }
    bool operator==(const TruncOrder& o) const { return d == o.d; }
    bool operator!=(const TruncOrder& o) const { return d != o.d; }
};

// Element of Q[x]/(x^d)[z,t] (lambda may ride along as a coefficient
// variable). The representative is kept eagerly reduced: every stored
// monomial has x-exponent < d, so equality is map equality.
class TruncElem {
public:
    TruncElem(Polynomial p, TruncOrder order)
        : poly_(p.truncate_at(var::x, order.d)), order_(order) {}

    static TruncElem reduce(const Polynomial& p, TruncOrder order) { return {p, order}; }
    static TruncElem zero(const VarTablePtr& table, TruncOrder order) {
        return {Polynomial(table), order};
    }
    static TruncElem one(const VarTablePtr& table, TruncOrder order) {
        return {Polynomial::constant(table, 1), order};
    }

    const Polynomial& poly() const { return poly_; }
    TruncOrder order() const { return order_; }
    const VarTablePtr& table() const { return poly_.table(); }
    bool is_zero() const { return poly_.is_zero(); }

    TruncElem operator+(const TruncElem& o) const {
        check_order(o);
        return {poly_ + o.poly_, order_};
    }
    TruncElem operator-(const TruncElem& o) const {
        check_order(o);
        return {poly_ - o.poly_, order_};
    }
    TruncElem operator-() const { return {-poly_, order_}; }
    TruncElem operator*(const TruncElem& o) const {
        check_order(o);
        return {poly_ * o.poly_, order_};
    }
    TruncElem operator*(const Rational& c) const { return {poly_ * c, order_}; }

    bool operator==(const TruncElem& o) const {
        check_order(o);
        return poly_ == o.poly_;
    }
    bool operator!=(const TruncElem& o) const { return !(*this == o); }

    // Multiplicative inverse. Units are exactly the elements whose mod-x
    // image is a nonzero rational constant; the rest is nilpotent, so the
    // inverse is the finite geometric series.
    TruncElem invert() const;

private:
    void check_order(const TruncElem& o) const {
        if (order_ != o.order_) throw DomainError("truncation order mismatch");
    }

    Polynomial poly_;
    TruncOrder order_;
};

inline TruncElem operator*(const Rational& c, const TruncElem& e) { return e * c; }

struct TruncDivisionResult {
    TruncElem quotient;
    TruncElem remainder;
};

// Division by m monic in z over Q[x]/(x^d)[t]: g = quotient*m + remainder
// with deg_z(remainder) < deg_z(m). Unique because m is monic.
TruncDivisionResult divide_by_monic_z(const TruncElem& g, const TruncElem& m);

} // namespace kr
