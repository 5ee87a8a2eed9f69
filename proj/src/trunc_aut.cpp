#include "kr/trunc_aut.hpp"

namespace kr {

TruncatedMap compose(const TruncatedMap& f, const TruncatedMap& g) {
    if (f.order() != g.order()) throw DomainError("truncation order mismatch");
    check_same_table(f.table(), g.table());
    return {f.apply(g.image_z()), f.apply(g.image_t())};
}

namespace {

// Inverse of u == id mod x by Newton iteration.
TruncatedMap newton_invert(const TruncatedMap& u) {
    const unsigned d = u.order().d;
    TruncatedMap g = TruncatedMap::identity(u.table(), u.order());
    unsigned trusted = 1;
    const Polynomial z2 = Polynomial::variable(u.table(), var::z) * Rational(2);
    const Polynomial t2 = Polynomial::variable(u.table(), var::t) * Rational(2);
    while (trusted < d) {
        TruncatedMap ug = compose(u, g);
        TruncatedMap correction(TruncElem(z2 - ug.image_z().poly(), u.order()),
                                TruncElem(t2 - ug.image_t().poly(), u.order()));
        g = compose(g, correction);
        trusted *= 2;
    }
    return g;
}

} // namespace

TruncatedMap invert(const TruncatedMap& f) {
    const VarTablePtr& table = f.table();
    Polynomial z = Polynomial::variable(table, var::z);
    Polynomial t = Polynomial::variable(table, var::t);

    Polynomial head_z = f.image_z().poly().coeff_of(var::x, 0);
    Polynomial head_t = f.image_t().poly().coeff_of(var::x, 0);
    Polynomial cz_p = head_z.coeff_of(var::z, 1);
    Polynomial ct_p = head_t.coeff_of(var::t, 1);
    if (!cz_p.is_constant() || !ct_p.is_constant())
        throw DomainError("invert: mod-x image is not a diagonal scaling");
    Rational cz = cz_p.constant_term();
    Rational ct = ct_p.constant_term();
    if (cz == 0 || ct == 0 || head_z != z * cz || head_t != t * ct)
        throw DomainError("invert: mod-x image is not a diagonal scaling");

    TruncatedMap result = [&] {
        if (cz == 1 && ct == 1) return newton_invert(f);
        TruncatedMap s_inv(TruncElem(z * (Rational(1) / cz), f.order()),
                           TruncElem(t * (Rational(1) / ct), f.order()));
        // f = u . s with u == id mod x, so f^{-1} = s^{-1} . u^{-1}
        TruncatedMap u = compose(f, s_inv);
        return compose(s_inv, newton_invert(u));
    }();

    if (!compose(f, result).is_identity() || !compose(result, f).is_identity())
        throw InternalError("invert: composition with candidate inverse is not the identity");
    return result;
}

TruncElem jacobian_det(const TruncatedMap& f) {
    const Polynomial& a = f.image_z().poly();
    const Polynomial& b = f.image_t().poly();
    Polynomial det = a.pdiff(var::z) * b.pdiff(var::t) - a.pdiff(var::t) * b.pdiff(var::z);
    return TruncElem(det, f.order());
}

bool in_Aj(const TruncatedMap& f, unsigned j) {
    if (j < 1 || j > f.order().d) throw DomainError("congruence level out of range");
    Polynomial dz = f.image_z().poly() - Polynomial::variable(f.table(), var::z);
    Polynomial dt = f.image_t().poly() - Polynomial::variable(f.table(), var::t);
    return dz.truncate_at(var::x, j).is_zero() && dt.truncate_at(var::x, j).is_zero();
}

bool stabilizes_r(const TruncatedMap& f, const RParams& params) {
    if (params.d != f.order().d) throw DomainError("truncation order mismatch");
    TruncElem fr = f.apply(params.r(f.table()));
    TruncElem r(params.r(f.table()), f.order());
    return divide_by_monic_z(fr, r).remainder.is_zero();
}

Polynomial phi_j(const TruncatedMap& f, unsigned j) {
    const unsigned d = f.order().d;
    if (j < 1 || j >= d) throw DomainError("phi_j requires 1 <= j <= d-1");
    if (!in_Aj(f, j)) throw DomainError("phi_j: map is not the identity mod x^j");
    const VarTablePtr& table = f.table();
    Polynomial a = (f.image_z().poly() - Polynomial::variable(table, var::z)).coeff_of(var::x, j);
    Polynomial b = (f.image_t().poly() - Polynomial::variable(table, var::t)).coeff_of(var::x, j);
    if (!(a.pdiff(var::z) + b.pdiff(var::t)).is_zero())
        throw DomainError("phi_j: order-j field is not divergence free");
    // a = -h_t, b = h_z; rebuild h with h(0,0) = 0.
    std::map<std::size_t, Polynomial> t_to_zero{{var::t, Polynomial(table)}};
    Polynomial h = b.substitute(t_to_zero).integrate(var::z) - a.integrate(var::t);
    return h;
}

Polynomial psi_j(const TruncatedMap& f, unsigned j, const RParams& params) {
    if (params.d != f.order().d) throw DomainError("truncation order mismatch");
    if (!stabilizes_r(f, params)) throw DomainError("psi_j: map does not stabilize the ideal (r)");
    Polynomial h0 = phi_j(f, j);
    Polynomial c = h0.coeff_of(var::z, 0).coeff_of(var::t, 0);
    DivisionResult div = divide_by_monic(h0 - c, params.r0(f.table()), var::z);
    if (!div.remainder.is_zero())
        throw DomainError("psi_j: potential is not a multiple of z^k + t^l");
    return div.quotient;
}

} // namespace kr
