#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tfd/interaction.hpp"
#include "tfd/propagators.hpp"
#include "tfd/schedule.hpp"

namespace tfd {

// Second-order (sunset) loop self-energy of one mode for the two-body
// contact interaction, in the quasiparticle basis where the unperturbed
// propagator is diagonal.  Structure mirrors the dressed propagator:
//
//   S11(t1, t2) supported on t1 >= t2,      S22(t1, t2) on t2 >= t1,
//   S21 == 0,                               S11(t1, t2) = S22*(t2, t1),
//   S12(t1, t2) = -S12*(t2, t1)  (no time-ordering restriction).
//
// One Wick channel is an ordered internal triple (k, l, m) drawn from the
// symmetrized vertex closure with first index j; the channel frequency is
// Omega_c = omega_l + omega_m - omega_k and the channel weight is
// 8 lambda^2 |V_jklm|^2.  The enumeration over *ordered* (l, m) together
// with the factor 8 reproduces golden-rule rates for distinct modes and the
// Gaussian-state moments <n(n-1)> = 2n^2, <(1+n)(2+n)> = 2(1+n)^2 for
// repeated-index channels, so no extra symmetry factors are needed.
//
// Occupation factors are evaluated at the earlier of the two kernel times;
// phase factors use the exact schedule integrals.  Only bosonic models are
// constructible, so these evaluators are boson-only by construction.
struct SunsetChannel {
    int k = 0, l = 0, m = 0;
    double weight2 = 0.0;  // |V_jklm|^2 (coupling applied by the evaluators)
};

std::vector<SunsetChannel> sunset_channels(const InteractionModel& model,
                                           int j);

// Gain/loss brackets at given mode occupations.
// scattering-in minus scattering-out for the retarded kernel:
//   n_l n_m (1+n_k) - (1+n_l)(1+n_m) n_k
double channel_bracket_s11(const SunsetChannel& c, const std::vector<double>& n);
// Boltzmann collision bracket (drives the occupation flow of mode j):
//   (1+n_j)(1+n_k) n_l n_m - n_j n_k (1+n_l)(1+n_m)
double channel_bracket_collision(const SunsetChannel& c, int j,
                                 const std::vector<double>& n);

// Full 2x2 loop kernel at one time pair (t, s); any ordering of t, s.
Eigen::Matrix2cd self_energy_second_order(const InteractionModel& model,
                                          const ThermalSchedule& sched, int j,
                                          double t, double s);

// Dense tabulation over a grid, reusing the two-time kernel container so the
// structure/conjugation defect helpers apply.
TwoTimeKernel tabulate_self_energy(const InteractionModel& model,
                                   const ThermalSchedule& sched, int j,
                                   const std::vector<double>& times);

// Occupation-flow integrand: 2 Im[ S12(t, s) e^{i int_s^t omega_j} ], in
// closed form.  Integrating this over the memory time s gives dn_j/dt.
double qte_integrand(const InteractionModel& model,
                     const ThermalSchedule& sched, int j, double t, double s);

// Equilibrium (static-occupation) closed forms on the frequency axis with
// Lorentzian width gamma_s:
//   S11(k0) = sum_c w_c / (k0 - Omega_c + i gamma_s),  w_c >= 0 weights;
//   spectral density sigma(k0) = -(1/pi) Im S11(k0) = sum_c w_c L_g(k0-Omega_c);
//   S12(k0) = 2 pi i sum_c L_g(k0-Omega_c) * 8 lambda^2 |V|^2 * B12_c,
// which collapses to 2 pi i (n_BE(k0) - n_j) sigma(k0) when the internal
// lines are Bose-Einstein distributed.
cd equilibrium_s11(const InteractionModel& model, const std::vector<double>& n,
                   int j, double k0, double gamma_s);
double equilibrium_spectral_density(const InteractionModel& model,
                                    const std::vector<double>& n, int j,
                                    double k0, double gamma_s);
cd equilibrium_s12(const InteractionModel& model, const std::vector<double>& n,
                   int j, double k0, double gamma_s);

}  // namespace tfd
