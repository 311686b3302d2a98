#include "tfd/zeta.hpp"

#include <cmath>

#include "tfd/errors.hpp"

namespace tfd {

ZetaParams solve_zeta(Statistics st, double n, double ndot, double gamma) {
    const double s = sigma(st);
    const double denom = 1.0 + s * n;
    if (gamma != 0.0 && std::abs(denom) < 1e-12)
        throw NumericsError(
            "zeta solution singular: 1 + sigma*n = 0 with gamma != 0");
    ZetaParams z;
    z.zeta1 = s * ndot + gamma;
    z.zeta2 = gamma == 0.0 ? ndot : ndot + gamma * n / denom;
    z.zeta3 = gamma == 0.0
                  ? -s * ndot
                  : -s * ndot - gamma * (1.0 + 2.0 * s * n) / (2.0 * denom);
    z.zeta5 = -z.zeta2;
    return z;
}

ZetaParams solve_zeta(Statistics st, const ModeSchedule& mode, double t) {
    return solve_zeta(st, mode.occupation.value(t),
                      mode.occupation.derivative(t), mode.gamma.value(t));
}

EtaParams eta_from_zeta(const ZetaParams& z, double omega) {
    EtaParams e;
    e.eta1 = cd(0.0, z.zeta1);
    e.eta2 = cd(0.0, z.zeta2);
    e.eta3 = cd(omega, z.zeta3);
    e.eta4 = cd(-omega, z.zeta3);
    e.eta5 = cd(0.0, z.zeta5);
    return e;
}

double zeta_constraint_residual(Statistics st, const ZetaParams& z) {
    const double s = sigma(st);
    return std::max(std::abs(z.zeta1 + s * z.zeta2 + 2.0 * z.zeta3),
                    std::abs(z.zeta2 + z.zeta5));
}

double occupation_rate(Statistics st, const ZetaParams& z, double n) {
    return -z.zeta1 * n + z.zeta2 * (1.0 + sigma(st) * n);
}

}  // namespace tfd
