#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "tfd/doublet.hpp"
#include "tfd/hamiltonian.hpp"
#include "tfd/propagators.hpp"
#include "tfd/states.hpp"
#include "tfd/superops.hpp"

using namespace tfd;

namespace {

LiouvilleSpace boson(std::vector<int> cutoffs) {
    return LiouvilleSpace(FockSpace(Statistics::Boson, std::move(cutoffs)));
}

LiouvilleSpace fermion(int modes) {
    return LiouvilleSpace(FockSpace(Statistics::Fermion, std::vector<int>(modes, 1)));
}

double max_abs(const MatC& m) { return m.cwiseAbs().maxCoeff(); }

double interior_col_max(const LiouvilleSpace& L, const MatC& m) {
    double best = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (L.interior(static_cast<std::size_t>(c)))
            best = std::max(best, m.col(c).cwiseAbs().maxCoeff());
    return best;
}

double max_abs2(const Eigen::Matrix2cd& m) { return m.cwiseAbs().maxCoeff(); }

// Direct truncated-space evaluation of the time-ordered doublet two-point
// function: the earlier-time operator hits the geometric state of the
// occupation at that time, the product is transported to the later time by
// the unperturbed generator, and the later-time operator is contracted with
// the trace form.  Fermionic exchange contributes sigma for the reversed
// ordering.
Eigen::Matrix2cd delta_via_engine(const LiouvilleSpace& L,
                                  const ModeSchedule& ms, double t1,
                                  double t2) {
    const UnperturbedGenerator gen(L);
    const ThermalSchedule sched = {ms};
    const cd s(sigma(L.statistics()), 0.0);
    const auto a = doublet_a(L, 0);
    const auto abar = doublet_abar(L, 0);
    const double lo = std::min(t1, t2);
    const double hi = std::max(t1, t2);
    const VecC rho0 = geometric_superstate(L, {ms.occupation.value(lo)});

    Eigen::Matrix2cd out;
    for (int mu = 0; mu < 2; ++mu) {
        for (int nu = 0; nu < 2; ++nu) {
            cd val;
            if (t1 >= t2) {
                const VecC seed = abar[nu] * rho0;
                const auto traj = evolve_lvn(gen, sched, HuForm::Physical,
                                             seed, {lo, hi});
                const VecC bra = identity_bra_times(L, a[mu]);
                val = cd(0.0, -1.0) * (bra.transpose() * traj.back()).value();
            } else {
                const VecC seed = a[mu] * rho0;
                const auto traj = evolve_lvn(gen, sched, HuForm::Physical,
                                             seed, {lo, hi});
                const VecC bra = identity_bra_times(L, abar[nu]);
                val = cd(0.0, -1.0) * s *
                      (bra.transpose() * traj.back()).value();
            }
            out(mu, nu) = val;
        }
    }
    return out;
}

}  // namespace

// ----------------------------------------------------------- Bogoliubov B(n)

TEST_CASE("bogoliubov matrix at reference occupations") {
    const Eigen::Matrix2d b0 = bogoliubov(Statistics::Boson, 0.0);
    CHECK(b0(0, 0) == 1.0);
    CHECK(b0(0, 1) == 0.0);
    CHECK(b0(1, 0) == -1.0);
    CHECK(b0(1, 1) == 1.0);

    const Eigen::Matrix2d b1 = bogoliubov(Statistics::Boson, 1.0);
    CHECK(b1(0, 0) == 2.0);
    CHECK(b1(0, 1) == -1.0);
    CHECK(b1(1, 0) == -1.0);
    CHECK(b1(1, 1) == 1.0);

    const Eigen::Matrix2d f = bogoliubov(Statistics::Fermion, 0.3);
    CHECK(f(0, 0) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(f(0, 1) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("bogoliubov determinant and closed-form inverse") {
    std::mt19937 rng(421u);
    std::uniform_real_distribution<double> boson_n(0.0, 4.0);
    std::uniform_real_distribution<double> fermion_n(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        for (Statistics st : {Statistics::Boson, Statistics::Fermion}) {
            const double n =
                st == Statistics::Boson ? boson_n(rng) : fermion_n(rng);
            const Eigen::Matrix2d b = bogoliubov(st, n);
            const Eigen::Matrix2d binv = bogoliubov_inverse(st, n);
            CHECK(b.determinant() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK((b * binv - Eigen::Matrix2d::Identity())
                      .cwiseAbs()
                      .maxCoeff() < 1e-14);
            CHECK((binv * b - Eigen::Matrix2d::Identity())
                      .cwiseAbs()
                      .maxCoeff() < 1e-14);
        }
    }
}

// ------------------------------------------------------------- xi operators

TEST_CASE("xi operators reduce to the bare doublet at zero occupation") {
    const LiouvilleSpace L = boson({4});
    const auto a = doublet_a(L, 0);
    const auto xi = xi_operators(L, 0, 0.0);
    // B(0) = [[1, 0], [-1, 1]]: xi^1 = a^1 and xi^2 = a^2 - a^1.
    CHECK(max_abs(MatC(xi[0] - a[0])) == 0.0);
    CHECK(max_abs(MatC(xi[1] - (a[1] - a[0]))) == 0.0);
}

TEST_CASE("doublet inversion a = B^{-1} xi reconstructs the bare operators") {
    for (double n : {0.0, 0.7, 2.3}) {
        const LiouvilleSpace L = boson({5});
        const Eigen::Matrix2d binv = bogoliubov_inverse(L.statistics(), n);
        const auto a = doublet_a(L, 0);
        const auto xi = xi_operators(L, 0, n);
        for (int mu = 0; mu < 2; ++mu) {
            const SpMatC rebuilt =
                SpMatC(cd(binv(mu, 0)) * xi[0] + cd(binv(mu, 1)) * xi[1]);
            CHECK(max_abs(MatC(rebuilt - a[mu])) < 1e-14);
        }
    }
}

TEST_CASE("xi algebra closes on the interior subspace") {
    CHECK(xi_commutator_defect(boson({5}), {0.7}) < 1e-12);
    CHECK(xi_commutator_defect(boson({3, 4}), {0.2, 1.1}) < 1e-12);
    CHECK(xi_commutator_defect(fermion(2), {0.3, 0.6}) < 1e-12);
}

// ----------------------------------------------------- thermal vacuum checks

TEST_CASE("zero-occupation vacuum is annihilated exactly") {
    const LiouvilleSpace L = boson({4});
    const VacuumResiduals r = xi_vacuum_check(L, {0.0});
    CHECK(r.ket_check == 0.0);
    CHECK(r.ket_tilde == 0.0);
}

TEST_CASE("thermal state conditions at high occupation and deep cutoff") {
    const LiouvilleSpace L = boson({40});
    const VacuumResiduals r = xi_vacuum_check(L, {1.0});
    // The ket conditions cancel order by order even on the truncated space,
    // so the residual is rounding-level, far below the 1e-8 working bound.
    CHECK(r.ket_check < 1e-12);
    CHECK(r.ket_tilde < 1e-12);
    CHECK(r.bra_tilde == 0.0);
    CHECK(r.bra_xibar == 0.0);
    CHECK(r.bra_xi_second == 0.0);
}

TEST_CASE("thermal state conditions for fermions are exact") {
    const LiouvilleSpace L = fermion(1);
    const VacuumResiduals r = xi_vacuum_check(L, {0.3});
    CHECK(r.ket_check < 1e-12);
    CHECK(r.ket_tilde < 1e-12);
    CHECK(r.bra_tilde == 0.0);
    CHECK(r.bra_xibar == 0.0);
    CHECK(r.bra_xi_second == 0.0);
}

TEST_CASE("thermal state conditions across modes") {
    const LiouvilleSpace L = boson({5, 6});
    const VacuumResiduals r = xi_vacuum_check(L, {0.4, 0.9});
    CHECK(r.ket_check < 1e-12);
    CHECK(r.ket_tilde < 1e-12);
    CHECK(r.bra_xibar == 0.0);
}

// ------------------------------------------------- doublet-form generator

TEST_CASE("T0 coupling matrix is nilpotent") {
    const Eigen::Matrix2d t0 = t0_matrix();
    CHECK((t0 * t0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("static schedules produce no counterterm") {
    const ThermalSchedule sched = {
        {Schedule::constant(1.3), Schedule::constant(0.8)}};
    const DoubletHuCoefficients co =
        doublet_hu(Statistics::Boson, sched, 0.5);
    CHECK(co.omega[0] == 1.3);
    CHECK(co.counterterm[0] == cd(0.0, 0.0));
}

TEST_CASE("doublet assembly matches the direct generator for fermions") {
    const LiouvilleSpace L = fermion(2);
    const ThermalSchedule sched = {
        {Schedule::linear(1.1, 0.2), Schedule::exp_approach(0.7, 0.2, 0.9)},
        {Schedule::constant(2.3), Schedule::exp_approach(0.4, 0.6, 1.4)}};
    const UnperturbedGenerator gen(L);
    for (double t : {0.0, 0.8}) {
        const MatC diff =
            MatC(build_doublet_hu(L, sched, t) -
                 gen.build(sched, t, HuForm::Physical));
        CHECK(max_abs(diff) < 1e-12);
    }
}

TEST_CASE("doublet assembly matches the direct generator on the interior") {
    const LiouvilleSpace L = boson({4});
    const ThermalSchedule sched = {
        {Schedule::constant(1.3), Schedule::exp_approach(1.0, 0.5, 1.0)}};
    const UnperturbedGenerator gen(L);
    const double t = 0.6;
    const MatC diff = MatC(build_doublet_hu(L, sched, t) -
                           gen.build(sched, t, HuForm::Physical));
    CHECK(interior_col_max(L, diff) < 1e-12);
    // The free doublet part realizes the anti-normal-ordered tilde product,
    // so the two assemblies differ at the truncation row by omega (M + 1).
    CHECK(max_abs(diff) == doctest::Approx(1.3 * 5.0).epsilon(1e-12));
}

TEST_CASE("doublet counterterm block matches the direct assembly everywhere") {
    // With omega = 0 only the occupation-rate blocks remain; these are the
    // same literal operator products in both assemblies, boundary included.
    const LiouvilleSpace L = boson({4});
    const ThermalSchedule sched = {
        {Schedule::constant(0.0), Schedule::exp_approach(1.0, 0.5, 1.0)}};
    const UnperturbedGenerator gen(L);
    const double t = 0.6;
    const MatC diff = MatC(build_doublet_hu(L, sched, t) -
                           gen.build(sched, t, HuForm::Physical));
    CHECK(max_abs(diff) < 1e-12);
    // The counterterm is trace-preserving on the full truncated space: its
    // left doublet factor is annihilated by the trace form identically.
    const VecC bra = identity_bra_times(L, build_doublet_hu(L, sched, t));
    CHECK(bra.cwiseAbs().maxCoeff() < 1e-15);
}

// ------------------------------------------------------------ d propagator

TEST_CASE("dressed propagator values at constant frequency") {
    const Schedule omega = Schedule::constant(2.0);
    const Eigen::Matrix2cd d = propagator_d(omega, 1.0, 0.0);
    const cd expected = cd(0.0, -1.0) * std::exp(cd(0.0, -2.0));
    CHECK(std::abs(d(0, 0) - expected) < 1e-15);
    CHECK(d(1, 1) == cd(0.0, 0.0));
    CHECK(d(0, 1) == cd(0.0, 0.0));
    CHECK(d(1, 0) == cd(0.0, 0.0));

    const Eigen::Matrix2cd drev = propagator_d(omega, 0.0, 1.0);
    CHECK(drev(0, 0) == cd(0.0, 0.0));
    // Reversed arguments flip the phase integral: +i e^{+2i}.
    CHECK(std::abs(drev(1, 1) - cd(0.0, 1.0) * std::exp(cd(0.0, 2.0))) <
          1e-15);

    const Eigen::Matrix2cd deq = propagator_d(omega, 0.7, 0.7);
    CHECK(deq(0, 0) == cd(0.0, -1.0));
    CHECK(deq(1, 1) == cd(0.0, 1.0));
}

TEST_CASE("dressed propagator phase for a ramped frequency") {
    // omega(t) = t; independent quadrature of the phase integral over [0, 1]
    // (trapezoid is exact for a linear integrand).
    const Schedule omega = Schedule::linear(0.0, 1.0);
    double quad = 0.0;
    const int steps = 1000;
    for (int i = 0; i < steps; ++i) {
        const double a = static_cast<double>(i) / steps;
        const double b = static_cast<double>(i + 1) / steps;
        quad += 0.5 * (a + b) * (b - a);
    }
    const Eigen::Matrix2cd d = propagator_d(omega, 1.0, 0.0);
    const cd expected = cd(0.0, -1.0) * std::exp(cd(0.0, -quad));
    CHECK(std::abs(d(0, 0) - expected) < 1e-12);
    CHECK(std::abs(d(0, 0) - cd(0.0, -1.0) * std::exp(cd(0.0, -0.5))) <
          1e-12);
}

// --------------------------------------------------------- Delta propagator

TEST_CASE("bare propagator reduces to the dressed one in the vacuum limit") {
    const ModeSchedule ms{Schedule::constant(1.7), Schedule::constant(0.0)};
    const Eigen::Matrix2cd dl =
        propagator_delta(Statistics::Boson, ms, 0.9, 0.2);
    const cd phi = std::exp(cd(0.0, -1.7 * 0.7));
    CHECK(std::abs(dl(0, 0) - cd(0.0, -1.0) * phi) < 1e-14);
    CHECK(std::abs(dl(0, 1)) == 0.0);
    CHECK(std::abs(dl(1, 0) - cd(0.0, -1.0) * phi) < 1e-14);
    CHECK(std::abs(dl(1, 1)) == 0.0);
}

TEST_CASE("bare propagator rank-one forms on either side of the diagonal") {
    const double s = 1.0;  // boson
    const ModeSchedule ms{Schedule::constant(1.3),
                          Schedule::exp_approach(1.0, 0.4, 0.7)};

    // t1 > t2: -i phi (1, 1)^T (1 + s n2, -s n2), n2 = n(t2).
    {
        const double t1 = 1.4, t2 = 0.5;
        const double n2 = ms.occupation.value(t2);
        const cd phi = std::exp(cd(0.0, -ms.omega.integral(t2, t1)));
        Eigen::Matrix2cd expected;
        expected << 1.0 + s * n2, -s * n2, 1.0 + s * n2, -s * n2;
        expected *= cd(0.0, -1.0) * phi;
        const Eigen::Matrix2cd dl =
            propagator_delta(Statistics::Boson, ms, t1, t2);
        CHECK(max_abs2(dl - expected) < 1e-14);
    }

    // t2 > t1: +i phi (s n1, 1 + s n1)^T (-1, 1), n1 = n(t1).
    {
        const double t1 = 0.5, t2 = 1.4;
        const double n1 = ms.occupation.value(t1);
        const cd phi = std::exp(cd(0.0, -ms.omega.integral(t2, t1)));
        Eigen::Matrix2cd expected;
        expected << -s * n1, s * n1, -(1.0 + s * n1), 1.0 + s * n1;
        expected *= cd(0.0, 1.0) * phi;
        const Eigen::Matrix2cd dl =
            propagator_delta(Statistics::Boson, ms, t1, t2);
        CHECK(max_abs2(dl - expected) < 1e-14);
    }
}

TEST_CASE("bare propagator sees only the earlier-time occupation") {
    const double t2 = 0.5, t1 = 1.4;
    const Schedule omega = Schedule::constant(1.3);
    // Two occupation histories that coincide up to t2 (constant 0.8 with
    // zero slope) and separate afterwards.
    const ModeSchedule flat{omega, Schedule::constant(0.8)};
    const ModeSchedule bent{
        omega, Schedule::cubic_hermite({t2, 0.9, t1}, {0.8, 1.2, 0.5},
                                       {0.0, 0.3, -0.4})};
    CHECK(bent.occupation.value(t2) == 0.8);
    CHECK(bent.occupation.value(0.2) == 0.8);
    const Eigen::Matrix2cd a =
        propagator_delta(Statistics::Boson, flat, t1, t2);
    const Eigen::Matrix2cd b =
        propagator_delta(Statistics::Boson, bent, t1, t2);
    CHECK(max_abs2(a - b) < 1e-12);
}

TEST_CASE("bare propagator agrees with the truncated-space evaluation") {
    const LiouvilleSpace L = boson({40});
    const ModeSchedule ms{Schedule::linear(1.0, 0.25),
                          Schedule::exp_approach(1.0, 0.6, 0.8)};
    for (auto [t1, t2] : {std::pair{1.1, 0.4}, std::pair{0.4, 1.1}}) {
        const Eigen::Matrix2cd direct = delta_via_engine(L, ms, t1, t2);
        const Eigen::Matrix2cd closed =
            propagator_delta(Statistics::Boson, ms, t1, t2);
        CHECK(max_abs2(direct - closed) < 1e-6);
    }
}

TEST_CASE("bare propagator agrees with the exact fermionic evaluation") {
    const LiouvilleSpace L = fermion(1);
    const ModeSchedule ms{Schedule::constant(1.9), Schedule::constant(0.3)};
    for (auto [t1, t2] : {std::pair{1.1, 0.4}, std::pair{0.4, 1.1}}) {
        const Eigen::Matrix2cd direct = delta_via_engine(L, ms, t1, t2);
        const Eigen::Matrix2cd closed =
            propagator_delta(Statistics::Fermion, ms, t1, t2);
        CHECK(max_abs2(direct - closed) < 1e-8);
    }
}

// -------------------------------------------------------- tabulated kernels

TEST_CASE("tabulated d kernel is diagonal and conjugation-symmetric") {
    const Schedule omega = Schedule::constant(2.0);
    std::vector<double> times;
    for (int i = 0; i <= 8; ++i) times.push_back(0.15 * i);
    const TwoTimeKernel k = tabulate_d(omega, times);
    CHECK(k.kind == KernelKind::d);
    CHECK(kernel_structure_defect(k) == 0.0);
    CHECK(kernel_conjugation_defect(k, k) < 1e-14);
}

TEST_CASE("structure defect flags a populated lower-triangular entry") {
    TwoTimeKernel k;
    k.kind = KernelKind::g;
    k.times = {0.0, 1.0};
    k.blocks.assign(4, Eigen::Matrix2cd::Zero());
    k.block(1, 0)(1, 0) = cd(0.25, 0.0);
    CHECK(kernel_structure_defect(k) == 0.25);
    k.kind = KernelKind::Sigma;  // unconstrained kind
    CHECK(kernel_structure_defect(k) == 0.0);
}
