#pragma once

#include <array>
#include <string>

#include "kr/aut_word.hpp"

namespace kr {

// The hypersurface X = V(x^d*y + z^k + t^l + x) and its coordinate ring.
struct Threefold {
    RParams params;
    VarTablePtr table;
    Polynomial P;  // x^d*y + z^k + t^l + x
    Polynomial r;  // z^k + t^l + x
    Polynomial r0; // z^k + t^l

    explicit Threefold(RParams params_, VarTablePtr table_ = VarTable::standard());
};

// Canonical form of p modulo (P) in Q[x, x^{-1}, z, t], obtained by the
// substitution y -> -r/x^d: the value is num / x^xexp, with xexp = 0 or num
// not divisible by x. p lies in (P) iff the normal form is zero.
struct LaurentForm {
    Polynomial num;
    unsigned xexp = 0;

    bool is_zero() const { return num.is_zero(); }
    bool operator==(const LaurentForm& o) const { return xexp == o.xexp && num == o.num; }
    bool operator!=(const LaurentForm& o) const { return !(*this == o); }
};

LaurentForm normal_form(const Polynomial& p, const Threefold& X);

// Membership g in (r, x^d) with the canonical witness: g = a*r + b*x^d with
// b free of x. Throws DomainError when g is not in the ideal.
struct IdealDecomposition {
    Polynomial a;
    Polynomial b;
};

IdealDecomposition decompose_mod_I(const Polynomial& g, const Threefold& X);

// Automorphism of the coordinate ring of X, stored as ambient images of
// x, y, z, t together with the images under the inverse. Constructed images
// always satisfy: substituting them into P gives a multiple of P, and both
// composites are the identity modulo (P).
class ThreefoldAut {
public:
    static constexpr std::size_t ix = 0, iy = 1, iz = 2, it = 3;

    ThreefoldAut(const Threefold& X, std::array<Polynomial, 4> images,
                 std::array<Polynomial, 4> inverse_images, std::string provenance,
                 bool verify = true);

    const std::array<Polynomial, 4>& images() const { return images_; }
    const std::array<Polynomial, 4>& inverse_images() const { return inverse_images_; }
    const std::string& provenance() const { return provenance_; }
    const Threefold& threefold() const { return X_; }

    Polynomial apply(const Polynomial& p) const;
    Polynomial apply_inverse(const Polynomial& p) const;

private:
    Threefold X_;
    std::array<Polynomial, 4> images_;
    std::array<Polynomial, 4> inverse_images_;
    std::string provenance_;
};

// The unique lift of a word automorphism of Q[x,z,t] stabilizing (x) and
// (x^d, r): y maps to a*y - b where apply(w, r) = a*r + b*x^d. For words
// congruent to the identity mod x^d the pair (1, (w(r)-r)/x^d) is used;
// otherwise the canonical x-free-b decomposition.
ThreefoldAut lift_to_X(const AutWord& w, const Threefold& X);

// The hyperbolic scaling: x -> c^{kl} x, z -> c^l z, t -> c^k t,
// y -> c^{kl(1-d)} y, which rescales P by c^{kl}.
ThreefoldAut torus_action(const Rational& c, const Threefold& X);

enum class LndSide { z_side, t_side };

// Exponential of s*Delta for the two evident locally nilpotent derivations
// annihilating P:
//   z-side: Delta = x^d d/dz - k z^{k-1} d/dy, s in Q[x,t]
//   t-side: Delta = x^d d/dt - l t^{l-1} d/dy, s in Q[x,z]
// The exponential is the closed form z -> z + s x^d (resp. t), with the
// y-image correction -((z + s x^d)^k - z^k)/x^d.
ThreefoldAut lnd_exponential(LndSide side, const Polynomial& s, const Threefold& X);

// Composition: apply(compose(f, g), p) == f.apply(g.apply(p)). No
// re-verification; certified factors compose to a certified automorphism.
ThreefoldAut compose(const ThreefoldAut& f, const ThreefoldAut& g);

// Images under f and g agree in the coordinate ring (equality mod (P) of
// all four variable images, both directions).
bool equal_mod_P(const ThreefoldAut& f, const ThreefoldAut& g);

// All forward and inverse images vanish at the origin.
bool fixes_origin(const ThreefoldAut& f);

} // namespace kr
