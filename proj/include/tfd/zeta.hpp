#pragma once

#include "tfd/schedule.hpp"
#include "tfd/statistics.hpp"

namespace tfd {

// Real rate parameters of the constrained quadratic generator, one set per
// mode.  They satisfy two linear sum rules by construction:
//   zeta1 + sigma*zeta2 + 2*zeta3 = 0   and   zeta2 + zeta5 = 0.
struct ZetaParams {
    double zeta1 = 0.0;
    double zeta2 = 0.0;
    double zeta3 = 0.0;
    double zeta5 = 0.0;
};

// Complex couplings of the unconstrained quadratic generator, related to
// (omega, zeta) by eta1 = i zeta1, eta2 = i zeta2, eta3 = omega + i zeta3,
// eta4 = -omega + i zeta3, eta5 = i zeta5.
struct EtaParams {
    cd eta1, eta2, eta3, eta4, eta5;
};

// General solution of the rate constraints for a target occupation path:
//   zeta1 = sigma*ndot + gamma
//   zeta2 = -zeta5 = ndot + gamma * n / (1 + sigma*n)
//   zeta3 = -sigma*ndot - gamma * (1 + 2*sigma*n) / (2*(1 + sigma*n))
// gamma is a free diagnostic rate; gamma = 0 is the physically admissible
// choice (see the identity-bra drift checks).
// Throws NumericsError when 1 + sigma*n is singular (fermion n = 1) with
// gamma != 0.
ZetaParams solve_zeta(Statistics st, double n, double ndot, double gamma);
ZetaParams solve_zeta(Statistics st, const ModeSchedule& mode, double t);

EtaParams eta_from_zeta(const ZetaParams& z, double omega);

// Residual of the two sum rules (max of absolute values); zero up to
// rounding for parameters produced by solve_zeta.
double zeta_constraint_residual(Statistics st, const ZetaParams& z);

// Occupation transport rate -zeta1*n + zeta2*(1 + sigma*n) implied by the
// generator; equals ndot when the parameters come from solve_zeta.
double occupation_rate(Statistics st, const ZetaParams& z, double n);

}  // namespace tfd
