#include "tfd/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "tfd/doublet.hpp"
#include "tfd/errors.hpp"

namespace tfd {

Eigen::Matrix2cd propagator_d(const Schedule& omega, double t1, double t2) {
    const cd phase = std::exp(cd(0.0, -omega.integral(t2, t1)));
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    if (t1 >= t2) d(0, 0) = cd(0.0, -1.0) * phase;
    if (t2 >= t1) d(1, 1) = cd(0.0, 1.0) * phase;
    return d;
}

Eigen::Matrix2cd propagator_delta(Statistics st, const ModeSchedule& mode,
                                  double t1, double t2) {
    const Eigen::Matrix2cd d = propagator_d(mode.omega, t1, t2);
    const Eigen::Matrix2d binv =
        bogoliubov_inverse(st, mode.occupation.value(t1));
    const Eigen::Matrix2d b = bogoliubov(st, mode.occupation.value(t2));
    return binv.cast<cd>() * d * b.cast<cd>();
}

TwoTimeKernel tabulate_d(const Schedule& omega, std::vector<double> times,
                         int mode) {
    TwoTimeKernel k;
    k.kind = KernelKind::d;
    k.j = mode;
    k.k = mode;
    k.times = std::move(times);
    const std::size_t n = k.times.size();
    k.blocks.resize(n * n);
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            k.block(i1, i2) = propagator_d(omega, k.times[i1], k.times[i2]);
        }
    }
    return k;
}

TwoTimeKernel tabulate_delta(Statistics st, const ModeSchedule& mode_schedule,
                             std::vector<double> times, int mode) {
    TwoTimeKernel k;
    k.kind = KernelKind::delta;
    k.j = mode;
    k.k = mode;
    k.times = std::move(times);
    const std::size_t n = k.times.size();
    k.blocks.resize(n * n);
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            k.block(i1, i2) =
                propagator_delta(st, mode_schedule, k.times[i1], k.times[i2]);
        }
    }
    return k;
}

double kernel_structure_defect(const TwoTimeKernel& kernel) {
    const std::size_t n = kernel.times.size();
    double worst = 0.0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const Eigen::Matrix2cd& blk = kernel.block(i1, i2);
            switch (kernel.kind) {
                case KernelKind::d:
                    worst = std::max(worst, std::abs(blk(0, 1)));
                    worst = std::max(worst, std::abs(blk(1, 0)));
                    break;
                case KernelKind::g:
                case KernelKind::S:
                    worst = std::max(worst, std::abs(blk(1, 0)));
                    break;
                default:
                    break;
            }
        }
    }
    return worst;
}

double kernel_conjugation_defect(const TwoTimeKernel& kjk,
                                 const TwoTimeKernel& kkj) {
    if (kjk.times.size() != kkj.times.size()) {
        throw DimensionError(
            "kernel_conjugation_defect: grids differ in size");
    }
    const std::size_t n = kjk.times.size();
    double worst = 0.0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const Eigen::Matrix2cd& a = kjk.block(i1, i2);
            const Eigen::Matrix2cd& b = kkj.block(i2, i1);
            worst = std::max(worst, std::abs(a(0, 0) - std::conj(b(1, 1))));
            worst = std::max(worst, std::abs(a(0, 1) + std::conj(b(0, 1))));
        }
    }
    return worst;
}

}  // namespace tfd
