#pragma once

#include "tfd/liouville.hpp"

namespace tfd {

// Superoperator realizations on the pair basis |m,n>> <-> |m><n|.
//
// check a_j   : |m,n>>  ->  |a_j|m><n|>>                    (left action)
// tilde a_j   : |m,n>>  ->  sqrt(sigma) sigma^(mu-nu) ||m><n|a_j^dagger>>
// with mu = sum(m), nu = sum(n) of the source state. Creators are the
// conjugate transposes of the annihilators in the Tr[A^dagger B] metric.

SpMatC check_annihilator(const LiouvilleSpace& L, int j);
SpMatC tilde_annihilator(const LiouvilleSpace& L, int j);
SpMatC check_creator(const LiouvilleSpace& L, int j);
SpMatC tilde_creator(const LiouvilleSpace& L, int j);

// Number superoperators (diagonal, exact on the truncated space):
// check: eigenvalue m_j, tilde: eigenvalue n_j.
SpMatC check_number(const LiouvilleSpace& L, int j);
SpMatC tilde_number(const LiouvilleSpace& L, int j);

// |I>> = sum_m |m,m>>, the vectorized identity; <<I|X|rho>> = Tr[X rho].
VecC identity_superstate(const LiouvilleSpace& L);

// Row vector <<I| O for a superoperator O, returned as the dense vector r
// with r(i) = (I^T O)(i); contraction r.dot-free: r.transpose()*v.
VecC identity_bra_times(const LiouvilleSpace& L, const SpMatC& op);

// Antilinear tilde conjugation, realized via the phase permutation
// P|m,n>> = (sqrt(sigma))^((mu+nu)^2) |n,m>>:
//   tilde(X) = P conj(X) conj(P),  tilde(|v>>) = P conj(v),  with P^-1 = conj(P).
SpMatC tilde_conjugation_matrix(const LiouvilleSpace& L);
SpMatC tilde_of(const LiouvilleSpace& L, const SpMatC& X);
VecC tilde_of_state(const LiouvilleSpace& L, const VecC& v);

// hat map for a single-body operator H = sum_ij h_ij a_i^dagger a_j + c:
// H_hat = H_check - H_tilde
//       = sum h_ij check(a_i^dag a_j) - sum conj(h_ij) tilde-bilinears + (c - conj c),
// built literally from the generator superoperators.
SpMatC hat_from_single_body(const LiouvilleSpace& L, const MatC& h, cd c = cd(0, 0));

// Commutator superoperator |rho>> -> |H rho - rho H>> for an arbitrary
// (possibly many-body) Fock-space matrix H; for Hermitian H this satisfies
// <<I| H_hat = 0 identically (trace preservation).
SpMatC hat_commutator(const LiouvilleSpace& L, const MatC& H_fock);

// Left-multiplication superoperator |rho>> -> |A rho>>.
SpMatC left_mult(const LiouvilleSpace& L, const MatC& A);
// Right-multiplication superoperator |rho>> -> |rho A>>.
SpMatC right_mult(const LiouvilleSpace& L, const MatC& A);

}  // namespace tfd
