#include "tfd/alpha_frame.hpp"

#include "tfd/superops.hpp"

namespace tfd {

Eigen::Matrix2cd pair1_generator(Statistics st, const ZetaParams& z) {
    const cd srt = static_cast<double>(sigma(st)) * sqrt_sigma(st);
    Eigen::Matrix2cd k;
    k << z.zeta3, -z.zeta1 * srt, z.zeta2 * srt, -z.zeta3;
    return k;
}

Eigen::Matrix2cd pair2_generator(Statistics st, const ZetaParams& z) {
    const cd rt = sqrt_sigma(st);
    Eigen::Matrix2cd k;
    k << z.zeta3, -z.zeta1 * rt, z.zeta2 * rt, -z.zeta3;
    return k;
}

AlphaCoefficients evolve_alpha(Statistics st, const ModeSchedule& mode,
                               double t0, double t1, const OdeOptions& opt) {
    VecC y(8);
    y.setZero();
    y[0] = y[3] = y[4] = y[7] = 1.0;  // both 2x2 blocks start as identity
    const auto rhs = [&](double t, const VecC& v, VecC& dv) {
        const ZetaParams z = solve_zeta(st, mode, t);
        const Eigen::Matrix2cd k1 = pair1_generator(st, z);
        const Eigen::Matrix2cd k2 = pair2_generator(st, z);
        const Eigen::Map<const Eigen::Matrix2cd> c1(v.data()), c2(v.data() + 4);
        Eigen::Map<Eigen::Matrix2cd> d1(dv.data()), d2(dv.data() + 4);
        d1 = c1 * k1;
        d2 = c2 * k2;
    };
    integrate_adaptive(rhs, y, t0, t1, opt);
    AlphaCoefficients out;
    out.pair1 = Eigen::Map<const Eigen::Matrix2cd>(y.data());
    out.pair2 = Eigen::Map<const Eigen::Matrix2cd>(y.data() + 4);
    return out;
}

SpMatC realize_pair1(const LiouvilleSpace& space, int mode,
                     const Eigen::Vector2cd& c) {
    const SpMatC ac = check_annihilator(space, mode);
    const SpMatC at = tilde_annihilator(space, mode);
    return (c[0] * ac + c[1] * SpMatC(at.adjoint())).pruned();
}

SpMatC realize_pair2(const LiouvilleSpace& space, int mode,
                     const Eigen::Vector2cd& c) {
    const SpMatC at = tilde_annihilator(space, mode);
    const SpMatC ac = check_annihilator(space, mode);
    return (c[0] * at + c[1] * SpMatC(ac.adjoint())).pruned();
}

Eigen::Vector2cd primitive_invariant_pair1(Statistics st,
                                           const Eigen::Matrix2cd& c1) {
    return c1.col(0) - sqrt_sigma(st) * c1.col(1);
}

Eigen::Vector2cd primitive_invariant_pair2(Statistics st,
                                           const Eigen::Matrix2cd& c2) {
    return c2.col(0) -
           static_cast<double>(sigma(st)) * sqrt_sigma(st) * c2.col(1);
}

Eigen::Vector2cd weighted_invariant_pair1(Statistics st, double n,
                                          const Eigen::Matrix2cd& c1) {
    const double s = sigma(st);
    return (1.0 + s * n) * c1.col(0) - s * sqrt_sigma(st) * n * c1.col(1);
}

Eigen::Vector2cd weighted_invariant_pair2(Statistics st, double n,
                                          const Eigen::Matrix2cd& c2) {
    const double s = sigma(st);
    return (1.0 + s * n) * c2.col(0) - sqrt_sigma(st) * n * c2.col(1);
}

namespace {

double interior_column_max(const LiouvilleSpace& space, const MatC& m) {
    double best = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (!space.interior(static_cast<std::size_t>(c))) continue;
        best = std::max(best, m.col(c).cwiseAbs().maxCoeff());
    }
    return best;
}

}  // namespace

FrameDriftReport frame_invariant_drift(const LiouvilleSpace& space, int mode,
                                       const ModeSchedule& sched, double t0,
                                       double t, double h,
                                       const OdeOptions& opt) {
    const Statistics st = space.statistics();
    // Independently evolved coefficient frames at the four stencil times.
    const std::array<double, 4> times = {t - 2 * h, t - h, t + h, t + 2 * h};
    const std::array<double, 4> weights = {1.0, -8.0, 8.0, -1.0};
    MatC prim1, prim2, wght1, wght2;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const AlphaCoefficients c = evolve_alpha(st, sched, t0, times[k], opt);
        const double n = sched.occupation.value(times[k]);
        const double w = weights[k] / (12.0 * h);
        const MatC p1 =
            MatC(realize_pair1(space, mode, primitive_invariant_pair1(st, c.pair1)));
        const MatC p2 =
            MatC(realize_pair2(space, mode, primitive_invariant_pair2(st, c.pair2)));
        const MatC w1 =
            MatC(realize_pair1(space, mode, weighted_invariant_pair1(st, n, c.pair1)));
        const MatC w2 =
            MatC(realize_pair2(space, mode, weighted_invariant_pair2(st, n, c.pair2)));
        if (k == 0) {
            prim1 = w * p1;
            prim2 = w * p2;
            wght1 = w * w1;
            wght2 = w * w2;
        } else {
            prim1 += w * p1;
            prim2 += w * p2;
            wght1 += w * w1;
            wght2 += w * w2;
        }
    }
    FrameDriftReport r;
    r.primitive_pair1 = interior_column_max(space, prim1);
    r.primitive_pair2 = interior_column_max(space, prim2);
    r.weighted_pair1 = interior_column_max(space, wght1);
    r.weighted_pair2 = interior_column_max(space, wght2);
    return r;
}

std::array<double, 4> identity_bra_drift(const LiouvilleSpace& space, int mode,
                                         const ZetaParams& z,
                                         const AlphaCoefficients& coeffs) {
    const Statistics st = space.statistics();
    const Eigen::Matrix2cd d1 = coeffs.pair1 * pair1_generator(st, z);
    const Eigen::Matrix2cd d2 = coeffs.pair2 * pair2_generator(st, z);
    const auto drift = [&](const SpMatC& xdot) {
        const VecC row = identity_bra_times(space, xdot);
        double best = 0.0;
        for (Eigen::Index i = 0; i < row.size(); ++i)
            if (space.interior(static_cast<std::size_t>(i)))
                best = std::max(best, std::abs(row[i]));
        return best;
    };
    return {drift(realize_pair1(space, mode, d1.col(0))),
            drift(realize_pair1(space, mode, d1.col(1))),
            drift(realize_pair2(space, mode, d2.col(0))),
            drift(realize_pair2(space, mode, d2.col(1)))};
}

}  // namespace tfd
