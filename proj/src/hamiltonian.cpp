#include "tfd/hamiltonian.hpp"

#include "tfd/errors.hpp"
#include "tfd/superops.hpp"

namespace tfd {

UnperturbedGenerator::UnperturbedGenerator(const LiouvilleSpace& space)
    : space_(&space) {
    const Statistics st = space.statistics();
    const cd rt = sqrt_sigma(st);
    const double s = sigma(st);
    blocks_.reserve(static_cast<std::size_t>(space.n_modes()));
    for (int j = 0; j < space.n_modes(); ++j) {
        ModeBlocks b;
        const SpMatC ac = check_annihilator(space, j);
        const SpMatC at = tilde_annihilator(space, j);
        const SpMatC nc = check_number(space, j);
        const SpMatC nt = tilde_number(space, j);
        // The raising pair is the literal ordered product (check-creator *
        // tilde-creator); for fermions this differs by a sign from the
        // adjoint of the lowering pair, and only the literal order keeps
        // the identity bra annihilated.
        b.pair_lower = (ac * at).pruned();
        b.pair_raise = SpMatC((at * ac).adjoint()).pruned();
        b.free_number = nc - nt;
        b.number_sum = nc + nt;
        b.phys_block = (rt * b.pair_lower + s * rt * b.pair_raise -
                        cd(s) * nc - SpMatC(at * SpMatC(at.adjoint())))
                           .pruned();
        blocks_.push_back(std::move(b));
    }
}

UnperturbedGenerator::Coeffs UnperturbedGenerator::coefficients(
    const ThermalSchedule& sched, double t, HuForm form, std::size_t j) const {
    if (sched.size() != blocks_.size())
        throw DimensionError("schedule has wrong number of modes");
    const Statistics st = space_->statistics();
    const cd i_rt = cd(0, sigma(st)) * sqrt_sigma(st);
    Coeffs c{};
    c.omega = sched[j].omega.value(t);
    if (form == HuForm::General) {
        const ZetaParams z = solve_zeta(st, sched[j], t);
        c.c_lower = i_rt * z.zeta1;
        c.c_raise = i_rt * z.zeta2;
        c.c_number = cd(0, z.zeta3);
        c.c_identity = cd(0, z.zeta5);
        c.c_phys = 0.0;
    } else {
        c.c_phys = cd(0, sched[j].occupation.derivative(t));
    }
    return c;
}

SpMatC UnperturbedGenerator::build(const ThermalSchedule& sched, double t,
                                   HuForm form) const {
    const auto dim = static_cast<Eigen::Index>(space_->dim());
    SpMatC h(dim, dim);
    SpMatC ident(dim, dim);
    ident.setIdentity();
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        const Coeffs c = coefficients(sched, t, form, j);
        const ModeBlocks& b = blocks_[j];
        h = h + cd(c.omega) * b.free_number;
        if (form == HuForm::General) {
            h = h + c.c_lower * b.pair_lower + c.c_raise * b.pair_raise +
                c.c_number * b.number_sum + c.c_identity * ident;
        } else {
            h = h + c.c_phys * b.phys_block;
        }
    }
    return h.pruned();
}

void UnperturbedGenerator::apply(const ThermalSchedule& sched, double t,
                                 HuForm form, const VecC& v, VecC& out) const {
    out.setZero(v.size());
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        const Coeffs c = coefficients(sched, t, form, j);
        const ModeBlocks& b = blocks_[j];
        out.noalias() += cd(c.omega) * (b.free_number * v);
        if (form == HuForm::General) {
            out.noalias() += c.c_lower * (b.pair_lower * v);
            out.noalias() += c.c_raise * (b.pair_raise * v);
            out.noalias() += c.c_number * (b.number_sum * v);
            out.noalias() += c.c_identity * v;
        } else {
            out.noalias() += c.c_phys * (b.phys_block * v);
        }
    }
}

std::vector<VecC> evolve_lvn(const UnperturbedGenerator& gen,
                             const ThermalSchedule& sched, HuForm form,
                             const VecC& rho0,
                             const std::vector<double>& t_grid,
                             const OdeOptions& opt) {
    if (t_grid.empty()) throw ConfigError("evolve_lvn: empty time grid");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1]))
            throw ConfigError("evolve_lvn: time grid must be strictly increasing");
    if (rho0.size() != static_cast<Eigen::Index>(gen.space().dim()))
        throw DimensionError("evolve_lvn: state dimension mismatch");

    std::vector<VecC> out;
    out.reserve(t_grid.size());
    out.push_back(rho0);
    VecC y = rho0;
    VecC hv(y.size());
    const auto rhs = [&](double t, const VecC& v, VecC& dv) {
        gen.apply(sched, t, form, v, hv);
        dv = cd(0, -1) * hv;
    };
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        integrate_adaptive(rhs, y, t_grid[k - 1], t_grid[k], opt);
        out.push_back(y);
    }
    return out;
}

}  // namespace tfd
