#pragma once

#include <vector>

#include "tfd/liouville.hpp"

namespace tfd {

// Product of per-mode geometric (thermal) distributions with mean
// occupations n_j: p_m ~ prod_j f_j^{m_j}, f_j = n_j/(1 + sigma n_j),
// carried on the diagonal pair states and normalized to unit trace on the
// truncated basis.
VecC geometric_superstate(const LiouvilleSpace& L, const std::vector<double>& n);

// Tr[a_j^dagger a_j rho] = <<I| check-number_j |rho>>.
double mean_occupation(const LiouvilleSpace& L, const VecC& rho, int j);
std::vector<double> mean_occupations(const LiouvilleSpace& L, const VecC& rho);

// Density-matrix property residuals of a superstate.
struct StateChecks {
    double hermiticity;    // max |v(m,n) - conj(v(n,m))|
    double trace_error;    // |Tr rho - 1|
    double min_eigenvalue; // smallest eigenvalue of the reshaped matrix
};
StateChecks check_density_properties(const LiouvilleSpace& L, const VecC& rho);

}  // namespace tfd
