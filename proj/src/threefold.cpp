#include "kr/threefold.hpp"

#include <algorithm>

namespace kr {

Threefold::Threefold(RParams params_, VarTablePtr table_)
    : params(params_), table(std::move(table_)), P(table), r(table), r0(table) {
    Polynomial x = Polynomial::variable(table, var::x);
    Polynomial y = Polynomial::variable(table, var::y);
    Polynomial z = Polynomial::variable(table, var::z);
    Polynomial t = Polynomial::variable(table, var::t);
    r0 = z.pow(params.k) + t.pow(params.l);
    r = r0 + x;
    P = x.pow(params.d) * y + r;
}

LaurentForm normal_form(const Polynomial& p, const Threefold& X) {
    check_same_table(p.table(), X.table);
    const Polynomial x = Polynomial::variable(X.table, var::x);
    const Polynomial neg_r = -X.r;

    std::map<unsigned, Polynomial> by_y = p.collect(var::y);
    if (by_y.empty()) return {Polynomial(X.table), 0};
    unsigned dy = by_y.rbegin()->first;

    Polynomial num(X.table);
    for (const auto& [i, coeff] : by_y)
        num += coeff * neg_r.pow(i) * x.pow(X.params.d * (dy - i));
    if (num.is_zero()) return {num, 0};

    unsigned denom = X.params.d * dy;
    unsigned val = 0xffffffffu;
    for (const auto& term : num.terms()) val = std::min<unsigned>(val, term.first[var::x]);
    unsigned strip = std::min(val, denom);
    if (strip > 0) num = exact_div(num, x.pow(strip), var::x);
    return {num, denom - strip};
}

IdealDecomposition decompose_mod_I(const Polynomial& g, const Threefold& X) {
    check_same_table(g.table(), X.table);
    if (g.contains_var(var::y)) throw DomainError("ideal membership input involves y");

    const unsigned d = X.params.d;
    const Polynomial x = Polynomial::variable(X.table, var::x);

    // r is monic of degree 1 in x, so reduction mod (r) is x -> -r0.
    Polynomial gbar = g.substitute({{var::x, -X.r0}});

    Polynomial b(X.table);
    if (!gbar.is_zero()) {
        DivisionResult div = divide_by_monic(gbar, X.r0.pow(d), var::z);
        if (!div.remainder.is_zero())
            throw DomainError("polynomial is not in the ideal (r, x^d)");
        b = (d % 2 == 0) ? div.quotient : -div.quotient;
    }

    DivisionResult div = divide_by_monic(g - b * x.pow(d), X.r, var::x);
    if (!div.remainder.is_zero())
        throw InternalError("ideal decomposition residual is not divisible by r");
    return {div.quotient, b};
}

namespace {

std::map<std::size_t, Polynomial> image_map(const std::array<Polynomial, 4>& im) {
    return {{var::x, im[ThreefoldAut::ix]},
            {var::y, im[ThreefoldAut::iy]},
            {var::z, im[ThreefoldAut::iz]},
            {var::t, im[ThreefoldAut::it]}};
}

bool in_ideal_x(const Polynomial& p) {
    for (const auto& term : p.terms())
        if (term.first[var::x] == 0) return false;
    return true;
}

void verify_aut(const Threefold& X, const std::array<Polynomial, 4>& fwd,
                const std::array<Polynomial, 4>& inv) {
    for (const Polynomial* side : {fwd.data(), inv.data()}) {
        if (!in_ideal_x(side[ThreefoldAut::ix]))
            throw DomainError("x-image does not preserve the ideal (x)");
        Polynomial p_img = X.P.substitute(image_map({side[0], side[1], side[2], side[3]}));
        if (!normal_form(p_img, X).is_zero())
            throw DomainError("images do not preserve the defining ideal (P)");
    }

    // Inverse compositions hold modulo (P), i.e. as functions on the
    // hypersurface, so they are checked by exact rational evaluation at
    // points of X: expanding the compositions symbolically squares image
    // degrees and does not scale past small cases. Points on X come from the
    // section y = -(z^k + t^l + x)/x^d at nonzero x. The symbolic identity
    // remains covered by the suites on small instances via apply().
    const std::size_t vars[4] = {var::x, var::y, var::z, var::t};
    const std::array<std::array<Rational, 3>, 3> seeds = {{
        {Rational(1), Rational(1), Rational(1)},
        {Rational(1) / 2, Rational(2), Rational(-1)},
        {Rational(-1), Rational(-2), Rational(1) / 3},
    }};
    for (const auto& s : seeds) {
        const Rational &x0 = s[0], &z0 = s[1], &t0 = s[2];
        std::map<std::size_t, Rational> at;
        for (std::size_t v = 0; v < X.table->size(); ++v) at[v] = Rational(7) / 2;
        at[var::x] = x0;
        at[var::z] = z0;
        at[var::t] = t0;
        at[var::y] = -(rational_pow(z0, X.params.k) + rational_pow(t0, X.params.l) + x0) /
                     rational_pow(x0, X.params.d);

        std::map<std::size_t, Rational> fwd_at = at, inv_at = at;
        for (std::size_t i = 0; i < 4; ++i) {
            fwd_at[vars[i]] = fwd[i].evaluate(at);
            inv_at[vars[i]] = inv[i].evaluate(at);
        }
        for (std::size_t i = 0; i < 4; ++i)
            if (inv[i].evaluate(fwd_at) != at[vars[i]] || fwd[i].evaluate(inv_at) != at[vars[i]])
                throw DomainError("maps are not inverse to each other on the hypersurface");
    }
}

} // namespace

ThreefoldAut::ThreefoldAut(const Threefold& X, std::array<Polynomial, 4> images,
                           std::array<Polynomial, 4> inverse_images, std::string provenance,
                           bool verify)
    : X_(X), images_(std::move(images)), inverse_images_(std::move(inverse_images)),
      provenance_(std::move(provenance)) {
    for (const auto& p : images_) check_same_table(p.table(), X_.table);
    for (const auto& p : inverse_images_) check_same_table(p.table(), X_.table);
    if (verify) verify_aut(X_, images_, inverse_images_);
}

Polynomial ThreefoldAut::apply(const Polynomial& p) const {
    check_same_table(p.table(), X_.table);
    return p.substitute(image_map(images_));
}

Polynomial ThreefoldAut::apply_inverse(const Polynomial& p) const {
    check_same_table(p.table(), X_.table);
    return p.substitute(image_map(inverse_images_));
}

namespace {

// a*y - b for the decomposition w(r) = a*r + b*x^d. Words that stabilize r
// mod x^d (every shear word we construct) admit the divided pair a = 1,
// b = (w(r) - r)/x^d, which costs one exact division; the canonical x-free-b
// pair from decompose_mod_I is only needed for words with a != 1, and doubles
// as the ideal-stabilization test for them.
std::array<Polynomial, 4> lifted_images(const AutWord& w, const Threefold& X) {
    const Polynomial x = Polynomial::variable(X.table, var::x);
    const Polynomial y = Polynomial::variable(X.table, var::y);
    auto [img_z, img_t] = word_images(w);
    Polynomial wr = X.r.substitute({{var::z, img_z}, {var::t, img_t}});

    Polynomial a(X.table), b(X.table);
    const Polynomial diff = wr - X.r;
    bool divided = true;
    for (const auto& term : diff.terms())
        if (term.first[var::x] < X.params.d) { divided = false; break; }
    if (divided) {
        a = Polynomial::constant(X.table, 1);
        b = exact_div(diff, x.pow(X.params.d), var::x);
    } else {
        IdealDecomposition dec = decompose_mod_I(wr, X);
        a = dec.a;
        b = dec.b;
    }
    return {x, a * y - b, img_z, img_t};
}

} // namespace

ThreefoldAut lift_to_X(const AutWord& w, const Threefold& X) {
    check_same_table(w.table(), X.table);
    std::array<Polynomial, 4> fwd = lifted_images(w, X);
    std::array<Polynomial, 4> inv = lifted_images(invert_word(w), X);
    return {X, std::move(fwd), std::move(inv),
            "lift(word[" + std::to_string(w.size()) + "])"};
}

namespace {

std::array<Polynomial, 4> torus_images(const Rational& c, const Threefold& X) {
    const unsigned k = X.params.k, l = X.params.l, d = X.params.d;
    Rational wx = rational_pow(c, static_cast<unsigned long>(k) * l);
    Rational wy = Rational(1) / rational_pow(c, static_cast<unsigned long>(k) * l * (d - 1));
    return {Polynomial::variable(X.table, var::x) * wx,
            Polynomial::variable(X.table, var::y) * wy,
            Polynomial::variable(X.table, var::z) * rational_pow(c, l),
            Polynomial::variable(X.table, var::t) * rational_pow(c, k)};
}

} // namespace

ThreefoldAut torus_action(const Rational& c, const Threefold& X) {
    if (c == 0) throw DomainError("torus parameter must be nonzero");
    return {X, torus_images(c, X), torus_images(Rational(1) / c, X),
            "torus(" + to_string(c) + ")"};
}

namespace {

std::array<Polynomial, 4> lnd_images(LndSide side, const Polynomial& s, const Threefold& X) {
    const Polynomial x = Polynomial::variable(X.table, var::x);
    const Polynomial y = Polynomial::variable(X.table, var::y);
    const Polynomial z = Polynomial::variable(X.table, var::z);
    const Polynomial t = Polynomial::variable(X.table, var::t);
    const Polynomial xd = x.pow(X.params.d);

    if (side == LndSide::z_side) {
        Polynomial zi = z + s * xd;
        Polynomial b = exact_div(zi.pow(X.params.k) - z.pow(X.params.k), xd, var::x);
        return {x, y - b, zi, t};
    }
    Polynomial ti = t + s * xd;
    Polynomial b = exact_div(ti.pow(X.params.l) - t.pow(X.params.l), xd, var::x);
    return {x, y - b, z, ti};
}

} // namespace

ThreefoldAut lnd_exponential(LndSide side, const Polynomial& s, const Threefold& X) {
    check_same_table(s.table(), X.table);
    if (s.contains_var(var::y) || s.contains_var(var::w))
        throw DomainError("slice polynomial must not involve y or w");
    if (side == LndSide::z_side && s.contains_var(var::z))
        throw DomainError("z-side slice polynomial must not involve z");
    if (side == LndSide::t_side && s.contains_var(var::t))
        throw DomainError("t-side slice polynomial must not involve t");
    return {X, lnd_images(side, s, X), lnd_images(side, -s, X),
            side == LndSide::z_side ? "exp(s*Delta_z)" : "exp(s*Delta_t)"};
}

ThreefoldAut compose(const ThreefoldAut& f, const ThreefoldAut& g) {
    check_same_table(f.threefold().table, g.threefold().table);
    if (f.threefold().params.d != g.threefold().params.d ||
        f.threefold().params.k != g.threefold().params.k ||
        f.threefold().params.l != g.threefold().params.l)
        throw DomainError("threefold parameter mismatch");
    std::array<Polynomial, 4> fwd = {
        f.apply(g.images()[0]), f.apply(g.images()[1]),
        f.apply(g.images()[2]), f.apply(g.images()[3])};
    std::array<Polynomial, 4> inv = {
        g.apply_inverse(f.inverse_images()[0]), g.apply_inverse(f.inverse_images()[1]),
        g.apply_inverse(f.inverse_images()[2]), g.apply_inverse(f.inverse_images()[3])};
    return {f.threefold(), std::move(fwd), std::move(inv),
            "compose(" + f.provenance() + ", " + g.provenance() + ")", false};
}

bool equal_mod_P(const ThreefoldAut& f, const ThreefoldAut& g) {
    for (std::size_t i = 0; i < 4; ++i)
        if (!normal_form(f.images()[i] - g.images()[i], f.threefold()).is_zero()) return false;
    return true;
}

bool fixes_origin(const ThreefoldAut& f) {
    std::map<std::size_t, Rational> origin;
    for (std::size_t i = 0; i < f.threefold().table->size(); ++i) origin[i] = 0;
    for (const auto& side : {f.images(), f.inverse_images()})
        for (const auto& p : side)
            if (p.evaluate(origin) != 0) return false;
    return true;
}

} // namespace kr
