#pragma once

#include <vector>

#include "tfd/liouville.hpp"
#include "tfd/ode.hpp"
#include "tfd/schedule.hpp"
#include "tfd/zeta.hpp"

namespace tfd {

// Two equivalent assemblies of the unperturbed super-Hamiltonian.
//
// General: normal-ordered quadratic form with the zeta rates (valid for
// any diagnostic gamma).  Physical: the gamma = 0 occupation-rate form,
// written with the literal annihilator-creator product in the tilde
// sector; on interior states it coincides with General at gamma = 0, and
// differs only by boundary terms of the truncation.
enum class HuForm { General, Physical };

class UnperturbedGenerator {
public:
    explicit UnperturbedGenerator(const LiouvilleSpace& space);

    // Assembled sparse matrix of H_u(t).
    SpMatC build(const ThermalSchedule& sched, double t, HuForm form) const;

    // out = H_u(t) * v without assembling the sum.
    void apply(const ThermalSchedule& sched, double t, HuForm form,
               const VecC& v, VecC& out) const;

    const LiouvilleSpace& space() const { return *space_; }

private:
    struct ModeBlocks {
        SpMatC free_number;  // check-number minus tilde-number
        SpMatC pair_lower;   // check-annihilator times tilde-annihilator
        SpMatC pair_raise;   // ordered product check-creator times tilde-creator
        SpMatC number_sum;   // check-number plus tilde-number
        SpMatC phys_block;   // occupation-rate block of the Physical form
    };
    struct Coeffs {
        double omega;
        cd c_lower, c_raise, c_number, c_identity, c_phys;
    };
    Coeffs coefficients(const ThermalSchedule& sched, double t, HuForm form,
                        std::size_t j) const;

    const LiouvilleSpace* space_;
    std::vector<ModeBlocks> blocks_;
};

// Solves i d/dt |rho>> = H_u(t) |rho>> and returns the state at every grid
// point; t_grid must be strictly increasing and trajectory[0] is rho0
// itself (the state at t_grid[0]).
std::vector<VecC> evolve_lvn(const UnperturbedGenerator& gen,
                             const ThermalSchedule& sched, HuForm form,
                             const VecC& rho0,
                             const std::vector<double>& t_grid,
                             const OdeOptions& opt = {});

}  // namespace tfd
