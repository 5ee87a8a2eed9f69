#include "kr/aut_word.hpp"

#include "kr/hamiltonian.hpp"

namespace kr {

namespace {

void check_shear_poly(const Polynomial& f, const VarTablePtr& table, std::size_t banned,
                      const char* what) {
    check_same_table(f.table(), table);
    if (f.contains_var(banned) || f.contains_var(var::y) || f.contains_var(var::w))
        throw DomainError(std::string(what) + ": polynomial involves a forbidden variable");
}

} // namespace

AutWord::AutWord(VarTablePtr table, std::vector<Generator> gens)
    : table_(std::move(table)), gens_(std::move(gens)) {
    if (!table_) throw DomainError("word without variable table");
    for (const Generator& g : gens_) {
        if (const auto* zs = std::get_if<ZShear>(&g)) {
            check_shear_poly(zs->f, table_, var::z, "z-shear");
        } else if (const auto* ts = std::get_if<TShear>(&g)) {
            check_shear_poly(ts->g, table_, var::t, "t-shear");
        } else {
            const auto& s = std::get<Scale>(g);
            if (s.a == 0 || s.b == 0) throw DomainError("scale factors must be nonzero");
        }
    }
}

AutWord AutWord::operator*(const AutWord& o) const {
    check_same_table(table_, o.table_);
    std::vector<Generator> gens = gens_;
    gens.insert(gens.end(), o.gens_.begin(), o.gens_.end());
    return {table_, std::move(gens)};
}

namespace {

// Left fold over the generators: after consuming g1..gi, (Z, T) are the
// images of z and t under g1.g2...gi. Appending gi+1 substitutes the current
// images into the generator's own small images; reduce is applied between
// the substitution's Horner steps so intermediates stay in the reduced ring.
std::pair<Polynomial, Polynomial> fold_images(
    const AutWord& w, const std::function<Polynomial(const Polynomial&)>& reduce) {
    const VarTablePtr& table = w.table();
    Polynomial Z = Polynomial::variable(table, var::z);
    Polynomial T = Polynomial::variable(table, var::t);
    for (const Generator& g : w.generators()) {
        if (const auto* zs = std::get_if<ZShear>(&g)) {
            std::map<std::size_t, Polynomial> s{{var::t, T}};
            Z = reduce(Z + zs->f.substitute_reduced(s, reduce));
        } else if (const auto* ts = std::get_if<TShear>(&g)) {
            std::map<std::size_t, Polynomial> s{{var::z, Z}};
            T = reduce(T + ts->g.substitute_reduced(s, reduce));
        } else {
            const auto& s = std::get<Scale>(g);
            Z = Z * s.a;
            T = T * s.b;
        }
    }
    return {Z, T};
}

} // namespace

std::pair<Polynomial, Polynomial> word_images(const AutWord& w) {
    return fold_images(w, [](const Polynomial& p) { return p; });
}

Polynomial apply(const AutWord& w, const Polynomial& p) {
    check_same_table(w.table(), p.table());
    auto [Z, T] = word_images(w);
    std::map<std::size_t, Polynomial> s{{var::z, Z}, {var::t, T}};
    return p.substitute(s);
}

AutWord invert_word(const AutWord& w) {
    std::vector<Generator> gens;
    gens.reserve(w.size());
    for (auto it = w.generators().rbegin(); it != w.generators().rend(); ++it) {
        if (const auto* zs = std::get_if<ZShear>(&*it)) {
            gens.push_back(ZShear{-zs->f});
        } else if (const auto* ts = std::get_if<TShear>(&*it)) {
            gens.push_back(TShear{-ts->g});
        } else {
            const auto& s = std::get<Scale>(*it);
            gens.push_back(Scale{Rational(1) / s.a, Rational(1) / s.b});
        }
    }
    return {w.table(), std::move(gens)};
}

TruncatedMap truncate_word(const AutWord& w, TruncOrder d) {
    auto [Z, T] =
        fold_images(w, [&](const Polynomial& p) { return p.truncate_at(var::x, d.d); });
    return {TruncElem(Z, d), TruncElem(T, d)};
}

Rational jacobian_det_word(const AutWord& w) {
    Rational det(1);
    for (const Generator& g : w.generators())
        if (const auto* s = std::get_if<Scale>(&g)) det *= s->a * s->b;
    return det;
}

namespace {

// Terms of p involving both z and t.
Polynomial mixed_part(const Polynomial& p) {
    Polynomial m(p.table());
    for (const auto& [mono, c] : p.terms())
        if (mono[var::z] >= 1 && mono[var::t] >= 1) m.add_term(mono, c);
    return m;
}

unsigned max_degree_in(const Polynomial& p, std::size_t v) {
    unsigned d = 0;
    for (const auto& [mono, c] : p.terms()) d = std::max<unsigned>(d, mono[v]);
    return d;
}

Rational binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

// Fixed list of pairwise distinct nonzero line slopes: 1, -1, 2, -2, ...
Rational slope(unsigned i) {
    long mag = long(i / 2) + 1;
    return Rational(i % 2 == 0 ? mag : -mag);
}

// Exact Gaussian elimination for A*sol = rhs with rational matrix and
// polynomial right-hand sides. A must be invertible.
std::vector<Polynomial> solve_linear(std::vector<std::vector<Rational>> A,
                                     std::vector<Polynomial> rhs) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && A[pivot][col] == 0) ++pivot;
        if (pivot == n) throw InternalError("line-decomposition system is singular");
        std::swap(A[pivot], A[col]);
        std::swap(rhs[pivot], rhs[col]);
        Rational inv = Rational(1) / A[col][col];
        for (std::size_t j = col; j < n; ++j) A[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || A[row][col] == 0) continue;
            Rational factor = A[row][col];
            for (std::size_t j = col; j < n; ++j) A[row][j] -= factor * A[col][j];
            rhs[row] -= factor * rhs[col];
        }
    }
    return rhs;
}

// Realize the mixed part of h through flows along shifted lines: each mixed
// homogeneous component is rewritten as sum_s lambda_s*(z + s*t)^n, and each
// slope contributes the conjugated flow [ZShear(st), TShear(x^j Q_s'(z)),
// ZShear(-st)], an exact flow of x^j*Q_s(z + st). No cross terms leak between
// slices, so this handles Hamiltonians of any shape; the price is one block
// per line, which makes the full-ring images of the word grow quickly. Kept
// as the fallback for inputs too degree-heavy for the slice gadgets below.
std::vector<Generator> emit_lines(unsigned j, const Polynomial& h, Polynomial& pure_z,
                                  Polynomial& pure_t) {
    const VarTablePtr& table = h.table();
    const Polynomial xj = Polynomial::variable(table, var::x).pow(j);
    const Polynomial z = Polynomial::variable(table, var::z);
    const Polynomial t = Polynomial::variable(table, var::t);

    std::map<unsigned, Polynomial> mixed; // (z,t)-degree -> homogeneous mixed part
    for (const auto& [m, c] : h.terms()) {
        unsigned ez = m[var::z], et = m[var::t];
        if (ez == 0 && et == 0) continue; // constants generate no flow
        if (ez == 0)
            pure_t.add_term(m, c);
        else if (et == 0)
            pure_z.add_term(m, c);
        else {
            auto it = mixed.try_emplace(ez + et, table).first;
            it->second.add_term(m, c);
        }
    }

    std::map<unsigned, Polynomial> line_deriv; // slope index -> dQ_s/du at u=z
    for (const auto& [n, M] : mixed) {
        const std::size_t unknowns = n - 1;
        std::vector<std::vector<Rational>> A(unknowns, std::vector<Rational>(unknowns));
        std::vector<Polynomial> rhs;
        rhs.reserve(unknowns);
        for (std::size_t i = 1; i <= unknowns; ++i) {
            for (std::size_t col = 0; col < unknowns; ++col)
                A[i - 1][col] = rational_pow(slope(unsigned(col)), i);
            rhs.push_back(M.coeff_of(var::z, n - unsigned(i)).coeff_of(var::t, unsigned(i)) *
                          (Rational(1) / binomial(n, unsigned(i))));
        }
        std::vector<Polynomial> coeffs = solve_linear(std::move(A), std::move(rhs));
        Polynomial sum_l(table), sum_ls(table);
        for (std::size_t col = 0; col < unknowns; ++col) {
            const Polynomial& lam = coeffs[col];
            if (lam.is_zero()) continue;
            auto it = line_deriv.try_emplace(unsigned(col), table).first;
            it->second += lam * Rational(long(n)) * z.pow(n - 1);
            sum_l += lam;
            sum_ls += lam * rational_pow(slope(unsigned(col)), n);
        }
        pure_z -= sum_l * z.pow(n);
        pure_t -= sum_ls * t.pow(n);
    }

    std::vector<Generator> gens;
    for (const auto& [idx, deriv] : line_deriv) {
        if (deriv.is_zero()) continue;
        Polynomial st = t * slope(idx);
        gens.push_back(ZShear{st});
        gens.push_back(TShear{xj * deriv});
        gens.push_back(ZShear{-st});
    }
    return gens;
}

} // namespace

// The mixed part of h is eliminated slice by slice along one of the two
// variables with four-generator commutator gadgets. Writing the slice of the
// current residual at top z-degree a as z^a*S(t), the gadget
//   [ZShear(S), TShear(x^j z^a), ZShear(-S), TShear(-x^j z^a)]   (j = 1)
// has exact first-order potential ((z+S)^{a+1} - z^{a+1})/(a+1), whose mixed
// part starts with z^a*S and otherwise has strictly smaller z-degree, and
//   [ZShear(x S), TShear(x^{j-1} z^a), ZShear(-x S), TShear(-x^{j-1} z^a)]  (j >= 2)
// has potential exactly z^a*S at level j. Subtracting the realized potential
// from the residual therefore terminates after at most deg_z many slices; the
// remaining pure parts are single shears. Keeping one gadget side linear or
// of low degree keeps the full-ring images of the word small, which matters
// downstream when words are evaluated exactly rather than truncated.
//
// At j = 1 the slice gadget leaks S^2-shaped junk into lower slices, so each
// elimination round can double the degree on the minor side. That is fine for
// a handful of rounds and fatal beyond; inputs whose mixed part is taller
// than GREEDY_MAX_ROUNDS on both sides go through the line realization
// instead, which never grows the word but costs more downstream.
AutWord realize_first_order(unsigned j, const Polynomial& h) {
    if (j < 1) throw DomainError("deviation order j must be at least 1");
    if (h.contains_var(var::x) || h.contains_var(var::y) || h.contains_var(var::w))
        throw DomainError("first-order Hamiltonian must involve only z, t and lambda");
    constexpr unsigned GREEDY_MAX_ROUNDS = 3;
    const VarTablePtr& table = h.table();
    const Polynomial x = Polynomial::variable(table, var::x);
    const Polynomial xj = x.pow(j);
    const Polynomial z = Polynomial::variable(table, var::z);
    const Polynomial t = Polynomial::variable(table, var::t);

    Polynomial R = h; // potential still to be realized
    Polynomial M = mixed_part(R);

    // Slice along the variable of smaller top degree: fewer gadgets, and the
    // cross-shears x^.*v^a it emits stay small.
    const unsigned amax = max_degree_in(M, var::z), bmax = max_degree_in(M, var::t);
    const bool zmajor = amax <= bmax;
    const std::size_t major = zmajor ? var::z : var::t;
    const Polynomial& mv = zmajor ? z : t;

    std::vector<Generator> gens;
    if (j == 1 && std::min(amax, bmax) > GREEDY_MAX_ROUNDS) {
        Polynomial pure_z(table), pure_t(table);
        gens = emit_lines(j, h, pure_z, pure_t);
        Polynomial zshear = -(xj * pure_t.pdiff(var::t));
        if (!zshear.is_zero()) gens.insert(gens.begin(), ZShear{zshear});
        Polynomial tshear = xj * pure_z.pdiff(var::z);
        if (!tshear.is_zero()) gens.push_back(TShear{tshear});
        AutWord word(table, std::move(gens));
        TruncOrder probe(j + 1);
        if (truncate_word(word, probe) != truncated_flow(h, j, probe))
            throw InternalError("realized word does not match the flow at its leading order");
        return word;
    }

    while (!M.is_zero()) {
        const unsigned a = max_degree_in(M, major);
        const Polynomial S = M.coeff_of(major, a);
        Polynomial realized(table);
        if (j == 1) {
            Polynomial cross = xj * mv.pow(a);
            if (zmajor) {
                gens.push_back(ZShear{S});
                gens.push_back(TShear{cross});
                gens.push_back(ZShear{-S});
                gens.push_back(TShear{-cross});
                realized = ((z + S).pow(a + 1) - z.pow(a + 1)) * (Rational(1) / Rational(long(a) + 1));
            } else {
                gens.push_back(TShear{-S});
                gens.push_back(ZShear{cross});
                gens.push_back(TShear{S});
                gens.push_back(ZShear{-cross});
                realized = (t.pow(a + 1) - (t - S).pow(a + 1)) * (Rational(1) / Rational(long(a) + 1));
            }
        } else {
            Polynomial inner = x * S;
            Polynomial cross = x.pow(j - 1) * mv.pow(a);
            if (zmajor) {
                gens.push_back(ZShear{inner});
                gens.push_back(TShear{cross});
                gens.push_back(ZShear{-inner});
                gens.push_back(TShear{-cross});
            } else {
                gens.push_back(TShear{inner});
                gens.push_back(ZShear{-cross});
                gens.push_back(TShear{-inner});
                gens.push_back(ZShear{cross});
            }
            realized = mv.pow(a) * S;
        }
        R -= realized;
        M = mixed_part(R);
        if (!M.is_zero() && max_degree_in(M, major) >= a)
            throw InternalError("mixed-slice elimination failed to make progress");
    }

    Polynomial pure_t(table), pure_z(table);
    for (const auto& [m, c] : R.terms()) {
        unsigned ez = m[var::z], et = m[var::t];
        if (ez == 0 && et == 0) continue; // constants generate no flow
        if (ez == 0)
            pure_t.add_term(m, c);
        else
            pure_z.add_term(m, c);
    }
    Polynomial zshear = -(xj * pure_t.pdiff(var::t));
    if (!zshear.is_zero()) gens.push_back(ZShear{zshear});
    Polynomial tshear = xj * pure_z.pdiff(var::z);
    if (!tshear.is_zero()) gens.push_back(TShear{tshear});

    AutWord word(table, std::move(gens));
    TruncOrder probe(j + 1);
    if (truncate_word(word, probe) != truncated_flow(h, j, probe))
        throw InternalError("realized word does not match the flow at its leading order");
    return word;
}

AutWord lift_hamiltonian(unsigned j, const Polynomial& h, TruncOrder d) {
    if (j < 1 || j >= d.d) throw DomainError("lift requires 1 <= j <= d-1");
    if (h.contains_var(var::y) || h.contains_var(var::w))
        throw DomainError("Hamiltonian must involve only x, z, t and lambda");
    TruncatedMap target = truncated_flow(h, j, d);
    AutWord word = realize_first_order(j, h.coeff_of(var::x, 0));
    for (unsigned m = j + 1; m < d.d; ++m) {
        TruncatedMap current = truncate_word(word, d);
        TruncatedMap residual = compose(target, invert(current));
        Polynomial hm = phi_j(residual, m);
        if (!hm.is_zero()) word = realize_first_order(m, hm) * word;
    }
    if (truncate_word(word, d) != target)
        throw InternalError("lifted word does not restrict to the flow");
    return word;
}

AutWord lift_with_target_order(unsigned j, const Polynomial& h, TruncOrder d, TruncOrder D) {
    if (D.d < d.d) throw DomainError("target order must be at least the ambient order");
    (void)d;
    return lift_hamiltonian(j, h, D);
}

} // namespace kr
