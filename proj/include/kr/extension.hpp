#pragma once

#include "kr/threefold.hpp"

namespace kr {

// Ideal membership for the shifted ideal (r - shift, x^d), with the same
// canonical witness as decompose_mod_I: g = a*(r - shift) + b*x^d, b free
// of x. shift must be free of x, y, z, t (a rational or a polynomial in
// lambda). Throws DomainError when g is not a member.
IdealDecomposition decompose_mod_I_shifted(const Polynomial& g, const Polynomial& shift,
                                           const Threefold& X);

// One-parameter family of fiber automorphisms: a word over Q[lambda][x,z,t]
// whose truncation mod x^d is the flow of gamma*(r - lambda) at order 1.
// target records the depth the word was matched to (>= d).
struct LambdaFamily {
    AutWord F;
    Polynomial gamma;
    TruncOrder d;
    unsigned target;
};

// F = word realization of exp(x*D_{gamma*(r-lambda)}) matched mod x^target
// (target 0 means d). gamma must involve only x, z, t.
LambdaFamily build_lambda_family(const Polynomial& gamma, const Threefold& X,
                                 unsigned target_order = 0);

// Substitute a rational value for lambda in every shear polynomial.
AutWord specialize_lambda(const AutWord& w, const Rational& c);

// Automorphism of the ambient four-space Q[x,y,z,t] preserving the ideal
// (P). Certificates: quotient with apply(P) = quotient*P as an exact
// identity, plus the decomposition witnesses (alpha, beta) used to build
// the y-image where applicable. Both composites with the inverse are exact
// polynomial identities, not congruences.
class AmbientAut {
public:
    static constexpr std::size_t ix = 0, iy = 1, iz = 2, it = 3;

    AmbientAut(const Threefold& X, std::array<Polynomial, 4> images,
               std::array<Polynomial, 4> inverse_images, Polynomial alpha, Polynomial beta,
               Polynomial quotient, std::string provenance, bool verify = true);

    const std::array<Polynomial, 4>& images() const { return images_; }
    const std::array<Polynomial, 4>& inverse_images() const { return inverse_images_; }
    const Polynomial& alpha() const { return alpha_; }
    const Polynomial& beta() const { return beta_; }
    const Polynomial& quotient() const { return quotient_; }
    const std::string& provenance() const { return provenance_; }
    const Threefold& threefold() const { return X_; }

    Polynomial apply(const Polynomial& p) const;
    Polynomial apply_inverse(const Polynomial& p) const;

private:
    Threefold X_;
    std::array<Polynomial, 4> images_;
    std::array<Polynomial, 4> inverse_images_;
    Polynomial alpha_, beta_, quotient_;
    std::string provenance_;
};

// Extension of a word trivial mod x^d: y -> y - b with w(r) = r + b*x^d.
// The defining polynomial is fixed exactly (quotient 1).
AmbientAut extend_Ad(const AutWord& w, const Threefold& X);

// Extension of a lambda-family: decompose F(r - lambda) over Q[lambda],
// set the y-image to y*alpha - beta, then substitute lambda -> P in all
// images. The defining polynomial is fixed exactly.
AmbientAut extend_generator(const LambdaFamily& fam, const Threefold& X);

// Ambient form of the hyperbolic torus action; quotient is c^{kl}.
AmbientAut extend_torus(const Rational& c, const Threefold& X);

// The automorphism of X induced by an ambient automorphism (re-verified).
ThreefoldAut restrict_to_X(const AmbientAut& f);

// Where the fiber V(P - c) goes: with constant quotient q, onto V(P - q*c).
struct FiberReport {
    Rational quotient;
    Rational source;
    Rational image;
    bool preserved;
};

FiberReport restrict_to_fiber(const AmbientAut& f, const Rational& c);

// All forward and inverse images vanish at the origin.
bool fixes_origin(const AmbientAut& f);

} // namespace kr
