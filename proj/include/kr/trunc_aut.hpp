#pragma once

#include <numeric>

#include "kr/truncated.hpp"

namespace kr {

// Parameters of the threefold family: r = z^k + t^l + x and r0 = z^k + t^l
// with d >= 2, 2 <= k < l, gcd(k,l) = 1.
struct RParams {
    unsigned d, k, l;

    RParams(unsigned d_, unsigned k_, unsigned l_) : d(d_), k(k_), l(l_) {
        if (d < 2) throw DomainError("d must be at least 2");
        if (k < 2 || k >= l) throw DomainError("need 2 <= k < l");
        if (std::gcd(k, l) != 1) throw DomainError("k and l must be coprime");
    }

    TruncOrder order() const { return TruncOrder(d); }

    Polynomial r(const VarTablePtr& table) const {
        return Polynomial::variable(table, var::z).pow(k) +
               Polynomial::variable(table, var::t).pow(l) + Polynomial::variable(table, var::x);
    }
    Polynomial r0(const VarTablePtr& table) const {
        return Polynomial::variable(table, var::z).pow(k) +
               Polynomial::variable(table, var::t).pow(l);
    }
};

// R-algebra endomorphism of Q[x]/(x^d)[z,t] determined by the images of z
// and t. Members of the automorphism groups handled here are always
// invertible over the x-adic filtration (identity mod x up to a diagonal
// scaling).
class TruncatedMap {
public:
    TruncatedMap(TruncElem image_z, TruncElem image_t)
        : image_z_(std::move(image_z)), image_t_(std::move(image_t)) {
        if (image_z_.order() != image_t_.order()) throw DomainError("truncation order mismatch");
        check_same_table(image_z_.table(), image_t_.table());
    }

    static TruncatedMap identity(const VarTablePtr& table, TruncOrder order) {
        return {TruncElem(Polynomial::variable(table, var::z), order),
                TruncElem(Polynomial::variable(table, var::t), order)};
    }

    const TruncElem& image_z() const { return image_z_; }
    const TruncElem& image_t() const { return image_t_; }
    TruncOrder order() const { return image_z_.order(); }
    const VarTablePtr& table() const { return image_z_.table(); }

    // Image of p under the ring map z -> image_z, t -> image_t; other
    // variables are fixed. Intermediates are truncated as they are built.
    TruncElem apply(const Polynomial& p) const {
        std::map<std::size_t, Polynomial> s{{var::z, image_z_.poly()}, {var::t, image_t_.poly()}};
        const unsigned bound = order().d;
        Polynomial img = p.substitute_reduced(
            s, [bound](const Polynomial& q) { return q.truncate_at(var::x, bound); });
        return TruncElem(img, order());
    }
    TruncElem apply(const TruncElem& e) const {
        if (e.order() != order()) throw DomainError("truncation order mismatch");
        return apply(e.poly());
    }

    bool operator==(const TruncatedMap& o) const {
        return image_z_ == o.image_z_ && image_t_ == o.image_t_;
    }
    bool operator!=(const TruncatedMap& o) const { return !(*this == o); }

    bool is_identity() const {
        return image_z_.poly() == Polynomial::variable(table(), var::z) &&
               image_t_.poly() == Polynomial::variable(table(), var::t);
    }

private:
    TruncElem image_z_;
    TruncElem image_t_;
};

// Ring-map composition: apply(compose(f,g), p) == apply(f, apply(g, p)).
TruncatedMap compose(const TruncatedMap& f, const TruncatedMap& g);

// Two-sided inverse. Supported class: maps whose mod-x image is z -> c_z*z,
// t -> c_t*t with nonzero constants (identity mod x after peeling the
// scaling). Newton iteration g <- g.(2 id - f.g) doubles the trusted x-order
// each step; the result is verified by composing both ways.
TruncatedMap invert(const TruncatedMap& f);

// Determinant of the Jacobian in z,t, an element of the truncated ring.
TruncElem jacobian_det(const TruncatedMap& f);

// f congruent to the identity mod x^j (membership in the j-th congruence
// subgroup), 1 <= j <= d.
bool in_Aj(const TruncatedMap& f, unsigned j);

// f(r) lies in the ideal (r): division by r (monic of degree k in z) leaves
// zero remainder in the truncated ring.
bool stabilizes_r(const TruncatedMap& f, const RParams& params);

// For f in the j-th congruence subgroup with Jacobian determinant 1 and
// 1 <= j <= d-1: the unique potential h with zero constant term such that
// f(z) = z - h_t x^j and f(t) = t + h_z x^j modulo x^{j+1}. The extracted
// order-j field (a, b) must be divergence free; h is rebuilt by exact
// integration, and phi_j(truncated_flow(h, j, d)) == h.
Polynomial phi_j(const TruncatedMap& f, unsigned j);

// For f additionally stabilizing (r): the potential factors through
// r0 = z^k + t^l; returns the cofactor alpha with potential == alpha * r0.
Polynomial psi_j(const TruncatedMap& f, unsigned j, const RParams& params);

} // namespace kr
