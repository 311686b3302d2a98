#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>

#include "tfd/modes.hpp"

namespace tfd {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;
using SpMatC = Eigen::SparseMatrix<cd>;

// Liouville space over a truncated Fock space: basis |m,n>> <-> |m><n|,
// inner product <<A|B>> = Tr[A^dagger B]. Pair index = ket*dim + bra, so a
// coefficient vector reshapes row-major into the density matrix.
class LiouvilleSpace {
public:
    explicit LiouvilleSpace(FockSpace fock) : fock_(std::move(fock)) {}

    const FockSpace& fock() const { return fock_; }
    Statistics statistics() const { return fock_.statistics(); }
    int n_modes() const { return fock_.n_modes(); }
    std::size_t fock_dim() const { return fock_.dim(); }
    std::size_t dim() const { return fock_.dim() * fock_.dim(); }

    std::size_t pair_index(std::size_t ket, std::size_t bra) const {
        return ket * fock_.dim() + bra;
    }
    std::size_t ket_of(std::size_t i) const { return i / fock_.dim(); }
    std::size_t bra_of(std::size_t i) const { return i % fock_.dim(); }

    // mu = total ket occupation, nu = total bra occupation of basis state i.
    int mu(std::size_t i) const { return fock_.total(ket_of(i)); }
    int nu(std::size_t i) const { return fock_.total(bra_of(i)); }

    // Interior Liouville states: both Fock indices interior.
    bool interior(std::size_t i) const {
        return fock_.interior(ket_of(i)) && fock_.interior(bra_of(i));
    }

    // Reshape a superstate vector into the density matrix it represents.
    MatC to_matrix(const VecC& v) const;
    VecC from_matrix(const MatC& rho) const;

private:
    FockSpace fock_;
};

}  // namespace tfd
