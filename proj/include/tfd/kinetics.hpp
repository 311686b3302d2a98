#pragma once

#include <cstddef>
#include <vector>

#include "tfd/interaction.hpp"

namespace tfd {

// Quantum transport (kinetic) equation for the mode occupations driven by the
// second-order collision kernel.  Frequencies are static here; the evolving
// degrees of freedom are the occupations n_j(t).  Two closures are provided:
//
//  * Memory:    dn_j/dt = int_{t0}^{t} ds K_j(t, s; n(s)),  with
//               K_j = sum_c 16 lambda^2 |V|^2 cos(Dw_c (t-s)) e^{-gd (t-s)} B_c(n(s)),
//               Dw_c = w_j + w_k - w_l - w_m, B_c the Boltzmann collision
//               bracket, and gd >= 0 an optional memory damping (gd = 0 is
//               the literal second-order equation over the full history).
//
//  * Markovian: dn_j/dt = sum_c 16 pi lambda^2 |V|^2 delta_g(Dw_c) B_c(n),
//               delta_g(x) = (g/pi) / (x^2 + g^2), the infinite-history
//               frozen-occupation limit of the damped memory kernel.
//
// Every 2-to-2 channel conserves the total quantum number exactly (each
// process appears in the gain and loss lists with equal multiplicity), and
// resonant channels additionally conserve sum_j w_j n_j.  The Bose-Einstein
// distribution makes every resonant collision bracket vanish, so it is a
// fixed point of both closures.

// Sampled occupation trajectory: one occupation vector per time stamp.
// Doubles as the memory buffer consumed by transport_rhs and as the result
// type of relax.
struct KineticHistory {
    std::vector<double> times;
    std::vector<std::vector<double>> occupations;
};

enum class KineticMode { Memory, Markovian };

struct KineticOptions {
    KineticMode mode = KineticMode::Memory;
    double step = 0.02;          // Heun step before any halving
    double gamma_delta = 0.0;    // memory damping gd (Memory mode)
    double gamma_markov = 0.05;  // Lorentzian width (Markovian mode)
    int max_halvings = 24;       // occupation-positivity guard
    std::size_t max_steps = 200000;  // hard cap on accepted steps
};

// Markovian collision map at occupations n.  Throws ConfigError for
// gamma_markov <= 0 (the broadened on-shell delta needs a finite width).
std::vector<double> markovian_collision(const InteractionModel& model,
                                        const std::vector<double>& omega,
                                        const std::vector<double>& n,
                                        double gamma_markov);

// Memory-kernel right-hand side at time t: trapezoidal quadrature of the
// collision kernel over the recorded history (whose last stamp must be t).
// Occupation factors enter at the earlier time s, matching the second-order
// kernel convention.
std::vector<double> transport_rhs(const InteractionModel& model,
                                  const std::vector<double>& omega,
                                  const KineticHistory& history, double t,
                                  double gamma_delta = 0.0);

// Integrate the kinetic equation from n0 over [t0, t_end] with Heun's
// predictor-corrector (the provisional end point participates in the memory
// integral of the corrector stage).  Steps producing negative occupations
// are halved up to max_halvings times, then NumericsError.
KineticHistory relax(const InteractionModel& model,
                     const std::vector<double>& omega,
                     const std::vector<double>& n0, double t0, double t_end,
                     const KineticOptions& opt = {});

// Bose-Einstein occupations n_j = 1 / (exp(beta (omega_j - mu)) - 1).
// Requires beta > 0 and mu < min(omega).
std::vector<double> bose_einstein_occupations(const std::vector<double>& omega,
                                              double beta, double mu);

// Invert (total number, total energy) -> (beta, mu) for the Bose-Einstein
// family on the given frequencies.  Solved by Newton iteration in
// unconstrained variables beta = e^y, mu = min(omega) - e^x; throws
// NumericsError if the targets are infeasible (e.g. energy below
// number * min(omega)) or the iteration fails to converge.
struct BoseEinsteinFit {
    double beta = 0.0;
    double mu = 0.0;
    int iterations = 0;
};
BoseEinsteinFit bose_einstein_fit(const std::vector<double>& omega,
                                  double total_number, double total_energy);

// Mode-sum entropy of an ideal-gas occupation vector,
// sum_j [(1+n) ln(1+n) - n ln n]; monotone along Markovian relaxation.
double occupation_entropy(const std::vector<double>& n);

// Conserved moments sum_j n_j and sum_j omega_j n_j.
double total_number(const std::vector<double>& n);
double total_energy(const std::vector<double>& omega,
                    const std::vector<double>& n);

}  // namespace tfd
