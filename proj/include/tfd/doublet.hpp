#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "tfd/liouville.hpp"
#include "tfd/schedule.hpp"

namespace tfd {

// Thermal doublet layer: the 2x2 Bogoliubov matrices B(n), the doublet
// operator realizations
//     a^1 = check a,          a^2 = sqrt(sigma) tilde a^dagger,
//     abar^1 = check a^dag,   abar^2 = -sqrt(sigma) tilde a,
// the dressed xi-operators xi = B a / xibar = abar B^-1, and the doublet
// assembly of the unperturbed generator.  Component index 0 of the arrays
// below is thermal index 1, component 1 is thermal index 2.

// B(n) = [[1 + sigma n, -sigma n], [-1, 1]], determinant identically 1.
Eigen::Matrix2d bogoliubov(Statistics st, double n);
// Closed-form inverse [[1, sigma n], [1, 1 + sigma n]].
Eigen::Matrix2d bogoliubov_inverse(Statistics st, double n);

// Doublet operators of one mode as sparse superoperators.
std::array<SpMatC, 2> doublet_a(const LiouvilleSpace& L, int mode);
std::array<SpMatC, 2> doublet_abar(const LiouvilleSpace& L, int mode);

// Dressed operators at occupation n: xi^mu = B^{mu nu} a^nu and
// xibar^mu = abar^nu B^{-1, nu mu}.
std::array<SpMatC, 2> xi_operators(const LiouvilleSpace& L, int mode, double n);
std::array<SpMatC, 2> xibar_operators(const LiouvilleSpace& L, int mode,
                                      double n);

// Residuals of the thermal-vacuum conditions at the geometric state of
// occupation vector n, maximized over modes.  The ket conditions annihilate
// the geometric state exactly even on the truncated space (the would-be
// boundary term is produced by neither route), so both ket entries are
// floating-point small; the bra conditions are linear identities of the
// trace form and vanish identically.
struct VacuumResiduals {
    double ket_check;      // max_j || xi^1_j |rho_0>> ||_inf
    double ket_tilde;      // max_j || [(1+sn) tilde a - sqrt(s) n check a^dag] |rho_0>> ||_inf
    double bra_tilde;      // max_j || <<I| (tilde a - s sqrt(s) check a^dag) ||_inf
    double bra_xibar;      // max_j || <<I| xibar^1_j ||_inf
    double bra_xi_second;  // max_j || <<I| xi^2_j ||_inf
};
VacuumResiduals xi_vacuum_check(const LiouvilleSpace& L,
                                const std::vector<double>& n);

// Worst interior defect of the dressed algebra,
//   max over j, k, mu, nu of || [xi^mu_j, xibar^nu_k]_sigma
//                               - delta_jk delta_munu ||_inf
// restricted to interior columns (the bracket picks up truncation terms in
// boundary columns exactly like the bare ladder algebra does).
double xi_commutator_defect(const LiouvilleSpace& L,
                            const std::vector<double>& n);

// Nilpotent coupling matrix T0 = [[1, -1], [1, -1]] of the occupation-rate
// counterterm.
Eigen::Matrix2d t0_matrix();

// Per-mode coefficients of the doublet-notation generator
//   sum_j [ omega_j (abar^mu a^mu + sigma) + ct_j abar^mu T0^{mu nu} a^nu ]
// with ct_j = -i sigma ndot_j(t).
struct DoubletHuCoefficients {
    std::vector<double> omega;
    std::vector<cd> counterterm;
};
DoubletHuCoefficients doublet_hu(Statistics st, const ThermalSchedule& sched,
                                 double t);

// Assembles the generator above from the literal doublet products.  The
// counterterm block reproduces the Physical-form assembly elementwise; the
// free part agrees on interior columns and differs at a boson boundary row
// by omega (M + 1) per mode (abar^2 a^2 realizes the anti-normal-ordered
// tilde product, whose top row truncates away).
SpMatC build_doublet_hu(const LiouvilleSpace& L, const ThermalSchedule& sched,
                        double t);

}  // namespace tfd
