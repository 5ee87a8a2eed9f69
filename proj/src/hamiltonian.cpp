#include "kr/hamiltonian.hpp"

namespace kr {

Polynomial bracket(const Polynomial& f, const Polynomial& g) {
    return f.pdiff(var::z) * g.pdiff(var::t) - g.pdiff(var::z) * f.pdiff(var::t);
}

Polynomial apply_D(const Polynomial& H, const Polynomial& f) { return bracket(H, f); }

FormalFlow formal_flow(const Polynomial& H, unsigned N) {
    if (N < 1) throw DomainError("flow order must be at least 1");
    if (H.contains_var(var::w)) throw DomainError("Hamiltonian must not involve w");
    const VarTablePtr& table = H.table();
    Polynomial w = Polynomial::variable(table, var::w);
    Polynomial dz = Polynomial::variable(table, var::z);
    Polynomial dt = Polynomial::variable(table, var::t);
    FormalFlow flow{H, N, dz, dt};
    Rational inv_fact(1);
    Polynomial wpow = Polynomial::constant(table, 1);
    for (unsigned m = 1; m < N; ++m) {
        dz = apply_D(H, dz);
        dt = apply_D(H, dt);
        if (dz.is_zero() && dt.is_zero()) break;
        inv_fact /= Rational(long(m));
        wpow *= w;
        flow.image_z += wpow * dz * inv_fact;
        flow.image_t += wpow * dt * inv_fact;
    }
    return flow;
}

Polynomial jacobian_det_flow(const FormalFlow& flow) {
    return bracket(flow.image_z, flow.image_t).truncate_at(var::w, flow.order);
}

namespace {

Rational binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

} // namespace

std::vector<Polynomial> sigma_sequence(const Polynomial& H, unsigned n_max) {
    const VarTablePtr& table = H.table();
    std::vector<Polynomial> Dz{Polynomial::variable(table, var::z)};
    std::vector<Polynomial> Dt{Polynomial::variable(table, var::t)};
    for (unsigned m = 1; m <= n_max; ++m) {
        Dz.push_back(apply_D(H, Dz.back()));
        Dt.push_back(apply_D(H, Dt.back()));
    }
    std::vector<Polynomial> sigma;
    for (unsigned n = 0; n <= n_max; ++n) {
        Polynomial s(table);
        for (unsigned k = 0; k <= n; ++k) s += binomial(n, k) * bracket(Dz[k], Dt[n - k]);
        sigma.push_back(s);
    }
    return sigma;
}

TruncatedMap truncated_flow(const Polynomial& H, unsigned j, TruncOrder d) {
    if (j < 1) throw DomainError("flow exponent j must be at least 1");
    const VarTablePtr& table = H.table();
    Polynomial h = H.truncate_at(var::x, d.d);
    Polynomial x = Polynomial::variable(table, var::x);
    Polynomial dz = Polynomial::variable(table, var::z);
    Polynomial dt = Polynomial::variable(table, var::t);
    Polynomial image_z = dz;
    Polynomial image_t = dt;
    Rational inv_fact(1);
    Polynomial xpow = Polynomial::constant(table, 1);
    for (unsigned m = 1; m * j < d.d; ++m) {
        dz = apply_D(h, dz).truncate_at(var::x, d.d - m * j);
        dt = apply_D(h, dt).truncate_at(var::x, d.d - m * j);
        if (dz.is_zero() && dt.is_zero()) break;
        inv_fact /= Rational(long(m));
        xpow *= x.pow(j);
        image_z += xpow * dz * inv_fact;
        image_t += xpow * dt * inv_fact;
    }
    return {TruncElem(image_z, d), TruncElem(image_t, d)};
}

} // namespace kr
