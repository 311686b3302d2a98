#include "tfd/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace tfd {

VecC geometric_superstate(const LiouvilleSpace& L, const std::vector<double>& n) {
    const auto& F = L.fock();
    const int s = sigma(F.statistics());
    if (static_cast<int>(n.size()) != F.n_modes())
        throw DimensionError("geometric_superstate: one mean occupation per mode");
    std::vector<double> f(n.size());
    for (std::size_t j = 0; j < n.size(); ++j) {
        if (n[j] < 0.0)
            throw NumericsError("geometric_superstate: negative occupation");
        if (F.statistics() == Statistics::Fermion && n[j] > 1.0)
            throw NumericsError("geometric_superstate: fermionic occupation > 1");
        f[j] = n[j] / (1.0 + s * n[j]);
    }
    VecC v = VecC::Zero(static_cast<Eigen::Index>(L.dim()));
    double norm = 0.0;
    for (std::size_t k = 0; k < F.dim(); ++k) {
        const auto& m = F.occ(k);
        double p = 1.0;
        for (std::size_t j = 0; j < f.size(); ++j)
            p *= std::pow(f[j], m[j]);
        norm += p;
        v(static_cast<Eigen::Index>(L.pair_index(k, k))) = cd(p, 0.0);
    }
    v /= norm;
    return v;
}

double mean_occupation(const LiouvilleSpace& L, const VecC& rho, int j) {
    const auto& F = L.fock();
    double acc = 0.0;
    for (std::size_t k = 0; k < F.dim(); ++k)
        acc += F.occ(k)[static_cast<std::size_t>(j)] *
               rho(static_cast<Eigen::Index>(L.pair_index(k, k))).real();
    return acc;
}

std::vector<double> mean_occupations(const LiouvilleSpace& L, const VecC& rho) {
    std::vector<double> out(static_cast<std::size_t>(L.n_modes()));
    for (int j = 0; j < L.n_modes(); ++j)
        out[static_cast<std::size_t>(j)] = mean_occupation(L, rho, j);
    return out;
}

StateChecks check_density_properties(const LiouvilleSpace& L, const VecC& rho) {
    const MatC R = L.to_matrix(rho);
    StateChecks c{};
    c.hermiticity = (R - R.adjoint()).cwiseAbs().maxCoeff();
    c.trace_error = std::abs(R.trace() - cd(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (R + R.adjoint()));
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

}  // namespace tfd
