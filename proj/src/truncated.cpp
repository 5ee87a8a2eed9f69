#include "kr/truncated.hpp"

namespace kr {

TruncElem TruncElem::invert() const {
    Polynomial head = poly_.coeff_of(var::x, 0);
    if (!head.is_constant() || head.constant_term() == 0)
        throw DomainError("not a unit in the truncated ring");
    Rational c = head.constant_term();
    // poly = c*(1 + n) with n supported in x-degrees >= 1, so n^d = 0.
    Polynomial n = poly_ * (Rational(1) / c) - Polynomial::constant(table(), 1);
    Polynomial sum = Polynomial::constant(table(), 1);
    Polynomial power = Polynomial::constant(table(), 1);
    for (unsigned i = 1; i < order_.d; ++i) {
        power = (power * n).truncate_at(var::x, order_.d);
        if (power.is_zero()) break;
        sum += (i % 2 == 0) ? power : -power;
    }
    return {sum * (Rational(1) / c), order_};
}

TruncDivisionResult divide_by_monic_z(const TruncElem& g, const TruncElem& m) {
    if (g.order() != m.order()) throw DomainError("truncation order mismatch");
    unsigned dz = m.poly().degree_in(var::z);
    if (dz == 0) throw DomainError("divisor must be monic in z");
    Polynomial lead = m.poly().coeff_of(var::z, dz);
    if (!lead.is_constant() || lead.constant_term() != 1)
        throw DomainError("divisor must be monic in z");
    // The divisor is monic, so quotient and remainder over Q[x][z,t] reduce
    // to the quotient and remainder over Q[x]/(x^d)[z,t].
    DivisionResult r = divide_by_monic(g.poly(), m.poly(), var::z);
    return {TruncElem(r.quotient, g.order()), TruncElem(r.remainder, g.order())};
}

} // namespace kr
