#include "tfd/doublet.hpp"

#include <algorithm>

#include "tfd/errors.hpp"
#include "tfd/states.hpp"
#include "tfd/superops.hpp"

namespace tfd {

Eigen::Matrix2d bogoliubov(Statistics st, double n) {
    const double s = sigma(st);
    Eigen::Matrix2d b;
    b << 1.0 + s * n, -s * n,
         -1.0, 1.0;
    return b;
}

Eigen::Matrix2d bogoliubov_inverse(Statistics st, double n) {
    const double s = sigma(st);
    Eigen::Matrix2d b;
    b << 1.0, s * n,
         1.0, 1.0 + s * n;
    return b;
}

std::array<SpMatC, 2> doublet_a(const LiouvilleSpace& L, int mode) {
    const cd rt = sqrt_sigma(L.statistics());
    return {check_annihilator(L, mode), SpMatC(rt * tilde_creator(L, mode))};
}

std::array<SpMatC, 2> doublet_abar(const LiouvilleSpace& L, int mode) {
    const cd rt = sqrt_sigma(L.statistics());
    return {check_creator(L, mode), SpMatC(-rt * tilde_annihilator(L, mode))};
}

std::array<SpMatC, 2> xi_operators(const LiouvilleSpace& L, int mode,
                                   double n) {
    const Eigen::Matrix2d b = bogoliubov(L.statistics(), n);
    const auto a = doublet_a(L, mode);
    std::array<SpMatC, 2> xi;
    for (int mu = 0; mu < 2; ++mu) {
        xi[mu] = SpMatC(cd(b(mu, 0)) * a[0] + cd(b(mu, 1)) * a[1]);
    }
    return xi;
}

std::array<SpMatC, 2> xibar_operators(const LiouvilleSpace& L, int mode,
                                      double n) {
    const Eigen::Matrix2d binv = bogoliubov_inverse(L.statistics(), n);
    const auto abar = doublet_abar(L, mode);
    std::array<SpMatC, 2> xb;
    for (int mu = 0; mu < 2; ++mu) {
        xb[mu] = SpMatC(cd(binv(0, mu)) * abar[0] + cd(binv(1, mu)) * abar[1]);
    }
    return xb;
}

namespace {

double inf_norm(const VecC& v) { return v.lpNorm<Eigen::Infinity>(); }

}  // namespace

VacuumResiduals xi_vacuum_check(const LiouvilleSpace& L,
                                const std::vector<double>& n) {
    if (static_cast<int>(n.size()) != L.n_modes()) {
        throw DimensionError("xi_vacuum_check: occupation vector size " +
                             std::to_string(n.size()) + " != mode count " +
                             std::to_string(L.n_modes()));
    }
    const Statistics st = L.statistics();
    const double s = sigma(st);
    const cd rt = sqrt_sigma(st);
    const cd srt = static_cast<double>(sigma(st)) * rt;
    const VecC rho0 = geometric_superstate(L, n);

    VacuumResiduals r{0.0, 0.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < L.n_modes(); ++j) {
        const SpMatC ac = check_annihilator(L, j);
        const SpMatC at = tilde_annihilator(L, j);
        const SpMatC acd = check_creator(L, j);
        const SpMatC atd = tilde_creator(L, j);
        const double w = 1.0 + s * n[j];

        const VecC ket1 = cd(w) * (ac * rho0) - (n[j] * srt) * (atd * rho0);
        const VecC ket2 = cd(w) * (at * rho0) - (n[j] * rt) * (acd * rho0);
        r.ket_check = std::max(r.ket_check, inf_norm(ket1));
        r.ket_tilde = std::max(r.ket_tilde, inf_norm(ket2));

        const VecC bra1 = identity_bra_times(L, SpMatC(at - srt * acd));
        const VecC bra2 = identity_bra_times(L, SpMatC(acd - rt * at));
        const VecC bra3 = identity_bra_times(L, SpMatC(rt * atd - ac));
        r.bra_tilde = std::max(r.bra_tilde, inf_norm(bra1));
        r.bra_xibar = std::max(r.bra_xibar, inf_norm(bra2));
        r.bra_xi_second = std::max(r.bra_xi_second, inf_norm(bra3));
    }
    return r;
}

double xi_commutator_defect(const LiouvilleSpace& L,
                            const std::vector<double>& n) {
    if (static_cast<int>(n.size()) != L.n_modes()) {
        throw DimensionError("xi_commutator_defect: occupation vector size " +
                             std::to_string(n.size()) + " != mode count " +
                             std::to_string(L.n_modes()));
    }
    const cd s(sigma(L.statistics()), 0.0);
    std::vector<std::array<SpMatC, 2>> xi, xb;
    xi.reserve(L.n_modes());
    xb.reserve(L.n_modes());
    for (int j = 0; j < L.n_modes(); ++j) {
        xi.push_back(xi_operators(L, j, n[j]));
        xb.push_back(xibar_operators(L, j, n[j]));
    }

    double worst = 0.0;
    for (int j = 0; j < L.n_modes(); ++j) {
        for (int k = 0; k < L.n_modes(); ++k) {
            for (int mu = 0; mu < 2; ++mu) {
                for (int nu = 0; nu < 2; ++nu) {
                    MatC br = MatC(xi[j][mu] * xb[k][nu]) -
                              s * MatC(xb[k][nu] * xi[j][mu]);
                    if (j == k && mu == nu) {
                        br.diagonal().array() -= cd(1.0);
                    }
                    for (Eigen::Index c = 0; c < br.cols(); ++c) {
                        if (!L.interior(c)) continue;
                        worst = std::max(worst, br.col(c).cwiseAbs().maxCoeff());
                    }
                }
            }
        }
    }
    return worst;
}

Eigen::Matrix2d t0_matrix() {
    Eigen::Matrix2d t0;
    t0 << 1.0, -1.0,
          1.0, -1.0;
    return t0;
}

DoubletHuCoefficients doublet_hu(Statistics st, const ThermalSchedule& sched,
                                 double t) {
    const double s = sigma(st);
    DoubletHuCoefficients co;
    co.omega.reserve(sched.size());
    co.counterterm.reserve(sched.size());
    for (const ModeSchedule& m : sched) {
        co.omega.push_back(m.omega.value(t));
        co.counterterm.push_back(cd(0.0, -s * m.occupation.derivative(t)));
    }
    return co;
}

SpMatC build_doublet_hu(const LiouvilleSpace& L, const ThermalSchedule& sched,
                        double t) {
    if (static_cast<int>(sched.size()) != L.n_modes()) {
        throw DimensionError("build_doublet_hu: schedule size " +
                             std::to_string(sched.size()) + " != mode count " +
                             std::to_string(L.n_modes()));
    }
    const cd s(sigma(L.statistics()), 0.0);
    const Eigen::Matrix2d t0 = t0_matrix();
    const DoubletHuCoefficients co = doublet_hu(L.statistics(), sched, t);

    SpMatC id(L.dim(), L.dim());
    id.setIdentity();
    SpMatC h(L.dim(), L.dim());
    for (int j = 0; j < L.n_modes(); ++j) {
        const auto a = doublet_a(L, j);
        const auto abar = doublet_abar(L, j);
        SpMatC free_part = s * id;
        SpMatC counter(L.dim(), L.dim());
        for (int mu = 0; mu < 2; ++mu) {
            free_part = SpMatC(free_part + SpMatC(abar[mu] * a[mu]));
            for (int nu = 0; nu < 2; ++nu) {
                if (t0(mu, nu) == 0.0) continue;
                counter = SpMatC(counter +
                                 cd(t0(mu, nu)) * SpMatC(abar[mu] * a[nu]));
            }
        }
        h = SpMatC(h + cd(co.omega[j]) * free_part +
                   co.counterterm[j] * counter);
    }
    return h;
}

}  // namespace tfd
