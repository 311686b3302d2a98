#include "tfd/picture.hpp"

#include <algorithm>
#include <string>

#include "tfd/errors.hpp"
#include "tfd/superops.hpp"

namespace tfd {

SpMatC build_full_hat(const LiouvilleSpace& L, const InteractionModel& model) {
    if (L.statistics() != model.statistics()) {
        throw ConfigError("build_full_hat: statistics mismatch");
    }
    return hat_commutator(L, model.total_fock_matrix(L.fock()));
}

namespace {

void check_grid(const std::vector<double>& t_grid, const char* where) {
    if (t_grid.size() < 2) {
        throw ConfigError(std::string(where) + ": need at least two grid points");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw ConfigError(std::string(where) +
                              ": grid must be strictly increasing");
        }
    }
}

}  // namespace

std::vector<VecC> evolve_hat(const SpMatC& h_hat, const VecC& v0,
                             const std::vector<double>& t_grid,
                             const OdeOptions& opt) {
    check_grid(t_grid, "evolve_hat");
    std::vector<VecC> out;
    out.reserve(t_grid.size());
    out.push_back(v0);
    VecC v = v0;
    const auto rhs = [&h_hat](double, const VecC& y, VecC& dy) {
        dy = cd(0.0, -1.0) * (h_hat * y);
    };
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        integrate_adaptive(rhs, v, t_grid[i - 1], t_grid[i], opt);
        out.push_back(v);
    }
    return out;
}

double occupation_rate_exact(const LiouvilleSpace& L, const SpMatC& h_hat,
                             int j, const VecC& rho) {
    const VecC bra = identity_bra_times(L, check_number(L, j));
    const VecC w = h_hat * rho;
    return (cd(0.0, -1.0) * (bra.transpose() * w).value()).real();
}

PictureEvolution evolve_v(const LiouvilleSpace& L,
                          const InteractionModel& model,
                          const ThermalSchedule& sched,
                          const std::vector<double>& t_grid, HuForm form,
                          const OdeOptions& opt) {
    check_grid(t_grid, "evolve_v");
    const Eigen::Index d = static_cast<Eigen::Index>(L.dim());
    if (d > 1024) {
        throw DimensionError(
            "evolve_v: dense picture evolution is limited to dim <= 1024, "
            "got " +
            std::to_string(d));
    }
    const SpMatC h_full = build_full_hat(L, model);
    const UnperturbedGenerator gen(L);

    // Stacked state [vec(U); vec(U0); vec(U0^{-1})].
    const Eigen::Index block = d * d;
    VecC y(3 * block);
    MatC id = MatC::Identity(d, d);
    Eigen::Map<MatC>(y.data(), d, d) = id;
    Eigen::Map<MatC>(y.data() + block, d, d) = id;
    Eigen::Map<MatC>(y.data() + 2 * block, d, d) = id;

    const auto rhs = [&](double t, const VecC& s, VecC& ds) {
        const Eigen::Map<const MatC> u(s.data(), d, d);
        const Eigen::Map<const MatC> u0(s.data() + block, d, d);
        const Eigen::Map<const MatC> w(s.data() + 2 * block, d, d);
        const SpMatC hu = gen.build(sched, t, form);
        Eigen::Map<MatC>(ds.data(), d, d) = cd(0.0, -1.0) * (h_full * u);
        Eigen::Map<MatC>(ds.data() + block, d, d) = cd(0.0, -1.0) * (hu * u0);
        Eigen::Map<MatC>(ds.data() + 2 * block, d, d) =
            cd(0.0, 1.0) * (w * hu);
    };

    PictureEvolution out;
    out.times = t_grid;
    out.v_hat.reserve(t_grid.size());
    out.u0.reserve(t_grid.size());
    out.u0_inv.reserve(t_grid.size());
    const auto sample = [&](const VecC& s) {
        const Eigen::Map<const MatC> u(s.data(), d, d);
        const Eigen::Map<const MatC> u0(s.data() + block, d, d);
        const Eigen::Map<const MatC> w(s.data() + 2 * block, d, d);
        out.u0.push_back(u0);
        out.u0_inv.push_back(w);
        out.v_hat.push_back(w * u);
    };
    sample(y);
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        integrate_adaptive(rhs, y, t_grid[i - 1], t_grid[i], opt);
        sample(y);
    }
    return out;
}

}  // namespace tfd
