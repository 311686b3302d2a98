#pragma once

#include <cstddef>
#include <vector>

#include "tfd/errors.hpp"
#include "tfd/statistics.hpp"

namespace tfd {

// Truncated multimode Fock space. Basis states are occupation vectors
// enumerated in row-major order with mode 0 most significant, i.e.
// index(m) = (...((m_0)*(M_1+1) + m_1)*(M_2+1) + m_2)...
// Fermionic modes require cutoff 1 (occupation 0 or 1); multimode fermionic
// ladder operators carry Jordan-Wigner signs in this fixed mode order.
class FockSpace {
public:
    FockSpace(Statistics stat, std::vector<int> cutoffs);

    Statistics statistics() const { return stat_; }
    int n_modes() const { return static_cast<int>(cutoffs_.size()); }
    int cutoff(int j) const { return cutoffs_[static_cast<std::size_t>(j)]; }
    std::size_t dim() const { return dim_; }

    const std::vector<int>& occ(std::size_t i) const { return occs_[i]; }
    std::size_t index(const std::vector<int>& m) const;
    // Total occupation sum_j m_j of basis state i.
    int total(std::size_t i) const { return totals_[i]; }
    // True if every occupation is strictly below its cutoff (bosons); for
    // fermions the algebra closes on the whole space, so everything counts.
    bool interior(std::size_t i) const { return interior_[i] != 0; }

    // a_j|i> = amp |out>; returns false when the state is annihilated.
    bool lower(std::size_t i, int j, std::size_t& out, double& amp) const;
    // a_j^dagger|i> = amp |out>; false when truncated away (or Pauli-blocked).
    bool raise(std::size_t i, int j, std::size_t& out, double& amp) const;

private:
    Statistics stat_;
    std::vector<int> cutoffs_;
    std::size_t dim_ = 0;
    std::vector<std::size_t> strides_;
    std::vector<std::vector<int>> occs_;
    std::vector<int> totals_;
    std::vector<char> interior_;
};

}  // namespace tfd
