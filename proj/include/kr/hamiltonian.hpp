#pragma once

#include <vector>

#include "kr/trunc_aut.hpp"

namespace kr {

// Poisson bracket {f,g} = f_z*g_t - g_z*f_t.
Polynomial bracket(const Polynomial& f, const Polynomial& g);

// Hamiltonian derivation D_H(f) = {H,f} = H_z*f_t - H_t*f_z.
Polynomial apply_D(const Polynomial& H, const Polynomial& f);

// exp(w*D_H) truncated at w-order N: the formal flow of the Hamiltonian
// field, acting on z and t.
struct FormalFlow {
    Polynomial H;
    unsigned order;
    Polynomial image_z;
    Polynomial image_t;
};

FormalFlow formal_flow(const Polynomial& H, unsigned N);

// Determinant of the Jacobian in z,t of the flow, mod w^N. Equals 1 for
// every Hamiltonian flow.
Polynomial jacobian_det_flow(const FormalFlow& flow);

// Sigma_n = sum_{k=0}^{n} C(n,k)*{D^k z, D^{n-k} t} for n = 0..n_max.
// Sigma_0 = 1, Sigma_n = 0 for n >= 1, and D(Sigma_n) = Sigma_{n+1}; these
// are the invariants behind jacobian_det_flow == 1.
std::vector<Polynomial> sigma_sequence(const Polynomial& H, unsigned n_max);

// exp(x^j * D_H) on the truncated ring: exact because x^{jm} vanishes once
// j*m >= d. H may involve x and lambda.
TruncatedMap truncated_flow(const Polynomial& H, unsigned j, TruncOrder d);

} // namespace kr
