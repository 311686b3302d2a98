#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tfd/interaction.hpp"
#include "tfd/liouville.hpp"
#include "tfd/ode.hpp"
#include "tfd/propagators.hpp"
#include "tfd/schedule.hpp"

namespace tfd {

// Exact-engine two-point functions of one mode pair on the truncated space.
//
// The causal Green function G^{mu nu}(t1, t2) is evaluated by seeding the
// trajectory state with the earlier-time doublet operator, transporting the
// seed with the full evolution, and contracting the later-time operator
// against the trace form (which the full generator preserves identically).
// The dressed kernel is the Bogoliubov sandwich g = B(t1) G B^{-1}(t2) with
// the unperturbed schedule occupations.
//
// Equal-time diagonal blocks resolve the time ordering from below (the
// written order a abar); the from-above blocks are stored separately.  The
// from-below/from-above difference is the equal-time bracket, so
//   i G11(t, t-0) = 1 + sigma n_H(t),   i G11(t, t+0) = sigma n_H(t),
// and the dressed 12 component obeys g12(t, t) = i sigma (n_H(t) - n(t))
// up to truncation weight at the cutoff row.
struct GreenFunctionSet {
    std::vector<double> times;
    Statistics stat = Statistics::Boson;
    int mode_j = 0;
    int mode_k = 0;
    std::vector<double> n_schedule_j;    // unperturbed n_j(t_i)
    std::vector<double> n_heisenberg_j;  // <<I| n_check_j |rho(t_i)>>
    TwoTimeKernel G;
    TwoTimeKernel g;
    TwoTimeKernel delta;  // closed-form unperturbed reference (j == k)
    TwoTimeKernel d;
    std::vector<Eigen::Matrix2cd> G_above;  // equal-time t2 -> t1^+ blocks
    std::vector<Eigen::Matrix2cd> g_above;
};

GreenFunctionSet full_green(const LiouvilleSpace& L,
                            const InteractionModel& model,
                            const ThermalSchedule& sched, int mode_j,
                            int mode_k, const std::vector<double>& times,
                            const OdeOptions& opt = {});

// Residual of the discretized Dyson equation G = Delta + Delta*Sigma*G when
// Sigma is extracted from the same grid as Delta^{-1} - G^{-1}
// (Tikhonov-regularized inverses).  The flattened G uses the same one-sided
// equal-time convention as the tabulated Delta (11 from below, 22 from
// above, transported through the Bogoliubov sandwich); the pure from-below
// diagonal would make the grid matrix exactly rank-deficient, because the
// final-time bra rows coincide and the initial thermal seed combination is
// annihilated.  Algebraically the residual is then bounded by the
// regularization leakage through the grid conditioning.
double dyson_closure_residual(const GreenFunctionSet& gs,
                              double regularization = 1e-10);

}  // namespace tfd
