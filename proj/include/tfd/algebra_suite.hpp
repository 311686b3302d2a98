#pragma once

#include <string>
#include <vector>

#include "tfd/liouville.hpp"

namespace tfd {

struct AlgebraCheck {
    std::string name;
    double residual;
    double threshold;
    bool pass() const { return residual < threshold || residual <= 0.0; }
};

struct AlgebraReport {
    std::vector<AlgebraCheck> checks;
    double max_residual() const;
    bool all_pass() const;
};

// Runs the operator-algebra identity suite on one Liouville space:
// canonical (anti)commutators on interior columns, number-superoperator
// spectra, the tilde-conjugation rules (antilinearity, products, involution),
// the identity-superstate relations, basis reconstruction from creation
// strings, and the single-body hat-map against the commutator oracle.
// `interior_tol` applies to boson interior residuals; fermionic spaces are
// checked against exact zero.
AlgebraReport run_algebra_suite(const LiouvilleSpace& L, double interior_tol = 1e-12);

}  // namespace tfd
