#pragma once

#include <variant>
#include <vector>

#include "kr/trunc_aut.hpp"

namespace kr {

// Elementary certified-invertible automorphisms of Q[x,z,t] (lambda may be
// present as a coefficient variable). Shear polynomials must avoid the
// sheared variable so the inverse is again a shear.
struct ZShear {
    Polynomial f; // z -> z + f, f in x,t[,lambda]
};
struct TShear {
    Polynomial g; // t -> t + g, g in x,z[,lambda]
};
struct Scale {
    Rational a, b; // z -> a*z, t -> b*t
};
inline bool operator==(const ZShear& a, const ZShear& b) { return a.f == b.f; }
inline bool operator==(const TShear& a, const TShear& b) { return a.g == b.g; }
inline bool operator==(const Scale& a, const Scale& b) { return a.a == b.a && a.b == b.b; }

using Generator = std::variant<ZShear, TShear, Scale>;

// Composition word of generators; the leftmost generator acts outermost:
// apply(w, p) = g1(g2(...(gn(p)))). Words are automorphisms of the ambient
// ring fixing every variable except z and t, and are invertible by reversing
// the order and inverting each generator.
class AutWord {
public:
    AutWord(VarTablePtr table, std::vector<Generator> gens);
    explicit AutWord(VarTablePtr table) : AutWord(std::move(table), {}) {}

    const VarTablePtr& table() const { return table_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }

    // Word concatenation: (v * w)(p) = v(w(p)).
    AutWord operator*(const AutWord& o) const;

private:
    VarTablePtr table_;
    std::vector<Generator> gens_;
};

// Images of z and t under the word, in the full polynomial ring.
std::pair<Polynomial, Polynomial> word_images(const AutWord& w);

// Image of p under the word.
Polynomial apply(const AutWord& w, const Polynomial& p);

// Reversed word of generator inverses.
AutWord invert_word(const AutWord& w);

// Restriction mod x^d: the induced truncated map. This is a group
// homomorphism: truncate_word(v * w, d) = compose(truncate_word(v, d),
// truncate_word(w, d)).
TruncatedMap truncate_word(const AutWord& w, TruncOrder d);

// Product of generator Jacobian determinants: shears contribute 1,
// Scale(a, b) contributes a*b.
Rational jacobian_det_word(const AutWord& w);

// A word congruent to the identity mod x^j whose order-x^j deviation field
// is the Hamiltonian field of h: truncate_word(result, j+1) equals
// truncated_flow(h, j, j+1). h must be free of x, y, w.
//
// Construction: split h into a pure-t part p(t), a pure-z part q(z), and
// mixed terms. The pure parts are exact flows already: ZShear(-x^j p'(t))
// and TShear(x^j q'(z)). Each homogeneous mixed component is rewritten as a
// combination of powers of the lines u = z + s*t over a fixed list of
// rational slopes s (Vandermonde solve; z^n and t^n corrections join the
// pure parts). For a line slope s the full Hamiltonian flow of Q(z + s*t)
// is itself exact, because u is a flow invariant:
//   [ZShear(s*t), TShear(x^j Q'(z)), ZShear(-s*t)]
// sends z to z - s*x^j*Q'(u) and t to t + x^j*Q'(u). The result is the
// concatenation of these exact flows; a mandatory internal check compares
// the order-(j+1) truncation against truncated_flow(h, j, j+1).
AutWord realize_first_order(unsigned j, const Polynomial& h);

// A word whose restriction mod x^d is exactly truncated_flow(h, j, d),
// 1 <= j <= d-1. Built by realize_first_order at order j followed by
// order-by-order correction: at each order m the residual
// compose(flow, invert(truncate_word(W, d))) is the identity mod x^m and
// divergence free, so its potential h_m feeds realize_first_order(m, h_m).
// The final equality is re-verified internally. h may involve x and lambda.
AutWord lift_hamiltonian(unsigned j, const Polynomial& h, TruncOrder d);

// As lift_hamiltonian but matching the flow to the deeper order D >= d;
// used when the deviation must vanish one order beyond the ambient
// truncation (b in (x) for threefold lifts).
AutWord lift_with_target_order(unsigned j, const Polynomial& h, TruncOrder d, TruncOrder D);

} // namespace kr
