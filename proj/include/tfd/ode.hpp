#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tfd/errors.hpp"

namespace tfd {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 1e-3;
    double max_step = std::numeric_limits<double>::infinity();
    long max_steps = 5'000'000;
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
};

// Embedded Dormand-Prince 5(4) pair with elementary step control.
// Deterministic: nothing depends on timing or addresses, so repeated runs
// produce bit-identical trajectories.
//
// Vec is an Eigen dense vector (real or complex scalar); rhs(t, y, dydt)
// writes the derivative into its third argument.  Integrates y in place
// from t0 to t1 (either direction).
template <class Vec, class Rhs>
OdeStats integrate_adaptive(Rhs&& rhs, Vec& y, double t0, double t1,
                            const OdeOptions& opt = {}) {
    OdeStats stats;
    if (t0 == t1) return stats;
    const double dir = t1 > t0 ? 1.0 : -1.0;

    // Butcher tableau (Dormand & Prince 1980), FSAL form.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                     a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const auto n = y.size();
    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    rhs(t0, y, k1);

    double t = t0;
    double h = dir * std::min(std::abs(opt.initial_step), opt.max_step);
    while (dir * (t1 - t) > 0) {
        if (stats.accepted + stats.rejected >= opt.max_steps)
            throw NumericsError("ODE integration exceeded max_steps at t=" +
                                std::to_string(t));
        bool final_step = false;
        if (dir * (t + h - t1) >= 0) {
            h = t1 - t;
            final_step = true;
        }

        ytmp = y + h * (a21 * k1);
        rhs(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, ynew, k7);

        double err2 = 0.0;
        for (decltype(y.size()) i = 0; i < n; ++i) {
            const double e = std::abs(h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                           e5 * k5[i] + e6 * k6[i] + e7 * k7[i]));
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]),
                                                             std::abs(ynew[i]));
            err2 += (e / sc) * (e / sc);
        }
        const double err = std::sqrt(err2 / static_cast<double>(n));

        if (err <= 1.0) {
            t = final_step ? t1 : t + h;
            y.swap(ynew);
            k1.swap(k7);  // first-same-as-last
            ++stats.accepted;
            const double fac =
                err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = dir * std::min(std::abs(h) * fac, opt.max_step);
        } else {
            ++stats.rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
            if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
                throw NumericsError("ODE step size underflow at t=" +
                                    std::to_string(t));
        }
    }
    return stats;
}

}  // namespace tfd
