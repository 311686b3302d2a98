#include "tfd/liouville.hpp"

namespace tfd {

MatC LiouvilleSpace::to_matrix(const VecC& v) const {
    const auto d = static_cast<Eigen::Index>(fock_dim());
    if (v.size() != d * d) throw DimensionError("to_matrix: wrong vector size");
    MatC rho(d, d);
    for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index b = 0; b < d; ++b) rho(k, b) = v(k * d + b);
    return rho;
}

VecC LiouvilleSpace::from_matrix(const MatC& rho) const {
    const auto d = static_cast<Eigen::Index>(fock_dim());
    if (rho.rows() != d || rho.cols() != d)
        throw DimensionError("from_matrix: wrong matrix size");
    VecC v(d * d);
    for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index b = 0; b < d; ++b) v(k * d + b) = rho(k, b);
    return v;
}

}  // namespace tfd
