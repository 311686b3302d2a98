#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tfd/interaction.hpp"
#include "tfd/propagators.hpp"
#include "tfd/schedule.hpp"

namespace tfd {

// On-shell frequency transform of a two-time loop kernel at observation time
// t over a backward memory window T:
//
//   S[w; t] = int_0^T dtau S_r(t, t-tau) e^{+i int_{t-tau}^t w}
//           + int_{-T}^0 dtau S_a(t+tau, t) e^{+i int_t^{t+tau} w},
//
// where S_r keeps the first-argument-later components (11 and the retarded
// half of 12) and S_a the second-argument-later ones (22 and the advanced
// half of 12).  Every kernel sample has both arguments <= t, so the
// transform is causal by construction; the 21 component stays exactly zero.
// The coincident tau = 0 point enters each branch with its own trapezoid
// endpoint weight, which counts the two-sided 12 component exactly once.
//
// t must be a node of the kernel grid and the grid must reach back to
// t - t_mem; otherwise ConfigError.
Eigen::Matrix2cd onshell_transform(const TwoTimeKernel& kernel,
                                   const Schedule& omega, double t,
                                   double t_mem);

// Root of Re f on [guess - half_width, guess + half_width] by the Illinois
// (damped false-position) method.  Throws NumericsError with a bracket scan
// in the message when the end points do not straddle a sign change.
double equilibrium_onshell_solve(const std::function<cd(double)>& f,
                                 double guess, double half_width,
                                 double tol = 1e-12);

// One staggered step of the two renormalization conditions at time t:
//  (1) the rate dn_j/dt is extracted from the 12 condition at the *current*
//      frequency (the delta-like quasiparticle source is assigned wholly to
//      the advanced endpoint, which makes the extracted rate coincide with
//      the transport quadrature on the same nodes), and
//  (2) the renormalized frequency solves the real 11 condition
//      omega - omega0_j - Re S11[omega; t] = 0 by bracketed root solve.
// stagger_residual reports how much the rate would move if re-extracted at
// the solved frequency.  On root-solve failure the frequency falls back to
// omega_current and omega_fallback is set.
struct OnShellResult {
    int mode = 0;
    double time = 0.0;
    Eigen::Matrix2cd transform = Eigen::Matrix2cd::Zero();  // loop S[w*; t]
    double omega = 0.0;
    double ndot = 0.0;
    double re_s11_residual = 0.0;
    double stagger_residual = 0.0;
    bool omega_fallback = false;
};

struct RenormOptions {
    double quad_step = 0.01;   // memory-ray quadrature spacing
    double bracket_half = 0.0; // <= 0: auto 10 lambda^2 sum|V|^2 (min 0.05)
    double root_tol = 1e-12;
};

OnShellResult new_renorm_step(const InteractionModel& model,
                              const ThermalSchedule& sched, int j, double t,
                              double t_mem, double omega_current,
                              const RenormOptions& opt = {});

// Synthetic single-mode spectral weight on a kappa grid with inverse
// temperature beta; rho must be nonnegative and integrate to one.
struct SpectralModel {
    std::vector<double> kappa;
    std::vector<double> rho;
    double beta = 1.0;
};

// Normalized Lorentzian peak sampled on [lo, hi].
SpectralModel lorentzian_spectral_model(double center, double width,
                                        double beta, double lo, double hi,
                                        int points);
// Normalized pair of narrow Gaussian peaks: main peak at `center` with
// weight 1 - weight, satellite at `satellite` with the given weight.
SpectralModel satellite_spectral_model(double center, double satellite,
                                       double weight, double width,
                                       double beta, double lo, double hi,
                                       int points);

// Quantifies why forcing g12(t, t) = 0 (identifying the kinetic occupation
// with the Heisenberg one) conflicts with a spread-out spectral weight:
// n_H = int n(kappa) rho(kappa) dkappa averages the thermal occupation over
// the weight, while the on-shell condition picks the single root omega* of
// Re 1/g11; the gap |n_H - n(omega*)| vanishes only in the sharp-peak limit.
struct InconsistencyReport {
    double n_heisenberg = 0.0;
    double omega_onshell = 0.0;
    double n_at_omega = 0.0;
    double gap = 0.0;
};

InconsistencyReport diagonalization_inconsistency_demo(
    const SpectralModel& spectral, double gamma_probe,
    double bracket_half = 0.3);

}  // namespace tfd
