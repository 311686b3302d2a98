#pragma once

#include <Eigen/Dense>

#include "tfd/liouville.hpp"
#include "tfd/ode.hpp"
#include "tfd/schedule.hpp"

namespace tfd {

// Joint diagonal distribution p_i = <<i,i | rho>> over Fock indices.
Eigen::VectorXd diagonal_distribution(const LiouvilleSpace& space,
                                      const VecC& rho);

// Deviation-from-geometric vector of a single-mode distribution:
//   q_m = sqrt(m+1) * ((1+n) p_{m+1} - n p_m),   m = 0 .. p.size()-2.
// q == 0 exactly characterizes the geometric distribution with mean n.
Eigen::VectorXd q_vector(const Eigen::VectorXd& p, double n);

// Real symmetric tridiagonal generator of the q flow, qdot = ndot * M q:
//   M_mm = -2(m+1),  M_{m,m+1} = sqrt((m+1)(m+2)).
Eigen::MatrixXd q_generator(int size);

struct QEvolution {
    Eigen::VectorXd closed_form;  // eigenmode solution
    Eigen::VectorXd integrated;   // direct adaptive integration
    double norm_closed = 0.0;     // closed-form l2 norm at the final time
};

// Solves qdot = ndot(t) M q from t0 to t1 by two independent routes.  The
// time dependence enters only through the net occupation change, so the
// closed form scales eigenmode l by exp(lambda_l * (n(t1) - n(t0))) and
// the squared norm is sum_l c_l^2 exp(2 lambda_l (n(t1) - n(t0))).
QEvolution evolve_q(const Eigen::VectorXd& q0, const Schedule& occupation,
                    double t0, double t1, const OdeOptions& opt = {});

}  // namespace tfd
