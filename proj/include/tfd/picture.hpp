#pragma once

#include <vector>

#include "tfd/hamiltonian.hpp"
#include "tfd/interaction.hpp"
#include "tfd/liouville.hpp"
#include "tfd/ode.hpp"
#include "tfd/schedule.hpp"

namespace tfd {

// Commutator superoperator of the full (time-independent) Hamiltonian
// H0 + H_int; trace-preserving on the whole truncated space.
SpMatC build_full_hat(const LiouvilleSpace& L, const InteractionModel& model);

// Evolves v0 under a constant generator, i dv/dt = h_hat v, sampling at
// every grid point; trajectory[0] is v0.
std::vector<VecC> evolve_hat(const SpMatC& h_hat, const VecC& v0,
                             const std::vector<double>& t_grid,
                             const OdeOptions& opt = {});

// d/dt <n_j> of the exact dynamics at state rho: -i <<I| n_check_j h_hat
// |rho>> (real part; the imaginary part is rounding).
double occupation_rate_exact(const LiouvilleSpace& L, const SpMatC& h_hat,
                             int j, const VecC& rho);

// Interaction-picture evolution superoperator V(t, t0) sampled on a grid,
// obtained by co-integrating the full evolution U(t, t0), the thermal-frame
// evolution U0(t, t0) and its inverse, and forming V = U0^{-1} U at the
// nodes.  Dense storage; guarded to dim <= 1024.
struct PictureEvolution {
    std::vector<double> times;
    std::vector<MatC> v_hat;    // V(t_i, t0)
    std::vector<MatC> u0;       // U0(t_i, t0)
    std::vector<MatC> u0_inv;   // U0^{-1}(t_i, t0)
};

PictureEvolution evolve_v(const LiouvilleSpace& L,
                          const InteractionModel& model,
                          const ThermalSchedule& sched,
                          const std::vector<double>& t_grid,
                          HuForm form = HuForm::Physical,
                          const OdeOptions& opt = {});

}  // namespace tfd
