#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tfd/schedule.hpp"
#include "tfd/statistics.hpp"

namespace tfd {

// Unperturbed two-time propagators in the thermal-doublet representation.
//
// The dressed-basis kernel is purely a phase with a step-function skeleton,
//   d(t1, t2) = diag(-i theta(t1 - t2), +i theta(t2 - t1)) e^{-i int_{t2}^{t1} omega},
// independent of the occupation; the bare-basis kernel is the sandwich
//   Delta(t1, t2) = B^{-1}(n(t1)) d(t1, t2) B(n(t2)).
//
// Equal-time convention: time ordering at t1 == t2 is resolved one-sidedly
// per component -- the 11 block keeps its t2 -> t1^- limit and the 22 block
// its t2 -> t1^+ limit, so d(t, t) = diag(-i, +i).  Each block is therefore
// continuous from within its own causal region.

Eigen::Matrix2cd propagator_d(const Schedule& omega, double t1, double t2);

// For t1 > t2 the sandwich collapses onto the first column of B^{-1}, which
// is (1, 1)^T for every occupation, so Delta(t1, t2) depends on the
// occupation history only through n(t2) (and vice versa for t2 > t1): the
// later-time argument never probes the schedule.
Eigen::Matrix2cd propagator_delta(Statistics st, const ModeSchedule& mode,
                                  double t1, double t2);

// Kernel families stored on two-time grids.
enum class KernelKind { d, delta, g, G, S, Sigma };

// Dense tabulation of a 2x2 kernel over a shared time grid; block(i1, i2)
// holds the value at (times[i1], times[i2]).  Diagonal entries use the
// one-sided equal-time convention above.
struct TwoTimeKernel {
    KernelKind kind = KernelKind::d;
    int j = 0;
    int k = 0;
    std::vector<double> times;
    std::vector<Eigen::Matrix2cd> blocks;  // row-major, times.size()^2

    Eigen::Matrix2cd& block(std::size_t i1, std::size_t i2) {
        return blocks[i1 * times.size() + i2];
    }
    const Eigen::Matrix2cd& block(std::size_t i1, std::size_t i2) const {
        return blocks[i1 * times.size() + i2];
    }
};

TwoTimeKernel tabulate_d(const Schedule& omega, std::vector<double> times,
                         int mode = 0);
TwoTimeKernel tabulate_delta(Statistics st, const ModeSchedule& mode_schedule,
                             std::vector<double> times, int mode = 0);

// Structural residual by kind: maximum |off-diagonal block entry| for d
// kernels (diagonal in the thermal index), maximum |21 entry| for the
// upper-triangular kinds (g and S), and 0 for unconstrained kinds.
double kernel_structure_defect(const TwoTimeKernel& kernel);

// Maximum defect of the conjugation pair relations between the (j,k) and
// (k,j) tabulations of a g- or S-type kernel on one grid:
//   K11_jk(t1,t2) - conj(K22_kj(t2,t1))  and
//   K12_jk(t1,t2) + conj(K12_kj(t2,t1)).
double kernel_conjugation_defect(const TwoTimeKernel& kjk,
                                 const TwoTimeKernel& kkj);

}  // namespace tfd
