#include "tfd/qdynamics.hpp"

#include <cmath>

#include "tfd/errors.hpp"

namespace tfd {

Eigen::VectorXd diagonal_distribution(const LiouvilleSpace& space,
                                      const VecC& rho) {
    if (rho.size() != static_cast<Eigen::Index>(space.dim()))
        throw DimensionError("diagonal_distribution: state dimension mismatch");
    const auto fock_dim = static_cast<Eigen::Index>(space.fock_dim());
    Eigen::VectorXd p(fock_dim);
    for (Eigen::Index i = 0; i < fock_dim; ++i) {
        const auto f = static_cast<std::size_t>(i);
        p[i] = rho[static_cast<Eigen::Index>(space.pair_index(f, f))].real();
    }
    return p;
}

Eigen::VectorXd q_vector(const Eigen::VectorXd& p, double n) {
    if (p.size() < 2)
        throw DimensionError("q_vector: need at least two entries");
    Eigen::VectorXd q(p.size() - 1);
    for (Eigen::Index m = 0; m < q.size(); ++m)
        q[m] = std::sqrt(static_cast<double>(m + 1)) *
               ((1.0 + n) * p[m + 1] - n * p[m]);
    return q;
}

Eigen::MatrixXd q_generator(int size) {
    if (size < 1) throw DimensionError("q_generator: size must be positive");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (int k = 0; k < size; ++k) {
        m(k, k) = -2.0 * (k + 1);
        if (k + 1 < size) {
            const double off = std::sqrt(static_cast<double>((k + 1) * (k + 2)));
            m(k, k + 1) = off;
            m(k + 1, k) = off;
        }
    }
    return m;
}

QEvolution evolve_q(const Eigen::VectorXd& q0, const Schedule& occupation,
                    double t0, double t1, const OdeOptions& opt) {
    const Eigen::MatrixXd m = q_generator(static_cast<int>(q0.size()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw NumericsError("evolve_q: eigendecomposition failed");

    const double dn = occupation.value(t1) - occupation.value(t0);
    const Eigen::VectorXd c = es.eigenvectors().transpose() * q0;
    const Eigen::VectorXd scale = (es.eigenvalues().array() * dn).exp();

    QEvolution out;
    out.closed_form = es.eigenvectors() * (c.array() * scale.array()).matrix();
    out.norm_closed =
        std::sqrt((c.array().square() * scale.array().square()).sum());

    Eigen::VectorXd y = q0;
    const auto rhs = [&](double t, const Eigen::VectorXd& v,
                         Eigen::VectorXd& dv) {
        dv.noalias() = occupation.derivative(t) * (m * v);
    };
    integrate_adaptive(rhs, y, t0, t1, opt);
    out.integrated = std::move(y);
    return out;
}

}  // namespace tfd
