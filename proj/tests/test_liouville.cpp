#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tfd/algebra_suite.hpp"
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

VecC basis_vec(const LiouvilleSpace& L, const std::vector<int>& m,
               const std::vector<int>& n) {
    VecC v = VecC::Zero(static_cast<Eigen::Index>(L.dim()));
    v(static_cast<Eigen::Index>(
        L.pair_index(L.fock().index(m), L.fock().index(n)))) = cd(1, 0);
    return v;
}

}  // namespace

TEST_CASE("pair-basis dimensions multiply") {
    CHECK(boson({3}).dim() == 16);
    CHECK(fermion(1).dim() == 4);
    CHECK(boson({2, 1}).dim() == 36);
}

TEST_CASE("fermionic cutoffs other than one are rejected") {
    CHECK_THROWS_AS(FockSpace(Statistics::Fermion, {2}), DimensionError);
    CHECK_THROWS_AS(FockSpace(Statistics::Boson, {0}), DimensionError);
    CHECK_THROWS_AS(FockSpace(Statistics::Boson, {40, 40, 40, 40, 40}),
                    DimensionError);  // basis-size overflow guard
}

TEST_CASE("check annihilator lowers the ket index with bosonic amplitude") {
    auto L = boson({3});
    VecC out = check_annihilator(L, 0) * basis_vec(L, {2}, {1});
    VecC want = std::sqrt(2.0) * basis_vec(L, {1}, {1});
    CHECK((out - want).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tilde annihilator lowers the bra index; boson phase is unity") {
    auto L = boson({3});
    VecC out = tilde_annihilator(L, 0) * basis_vec(L, {0}, {1});
    CHECK((out - basis_vec(L, {0}, {0})).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fermionic tilde sector carries the statistics phase") {
    auto L = fermion(1);
    // tilde-creator on |1,0>>: phase sqrt(sigma)*sigma^(mu-nu) = i*(-1) = -i.
    VecC up = tilde_creator(L, 0) * basis_vec(L, {1}, {0});
    CHECK((up - cd(0, -1) * basis_vec(L, {1}, {1})).cwiseAbs().maxCoeff() == 0.0);
    // and the matching annihilator action: tilde-a |1,1>> = i |1,0>>.
    VecC dn = tilde_annihilator(L, 0) * basis_vec(L, {1}, {1});
    CHECK((dn - cd(0, 1) * basis_vec(L, {1}, {0})).cwiseAbs().maxCoeff() == 0.0);
    // right-multiplying |1><0| by a-dagger annihilates it.
    CHECK(VecC(tilde_annihilator(L, 0) * basis_vec(L, {1}, {0}))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("identity superstate has unit diagonal amplitudes") {
    auto L = fermion(1);
    VecC I = identity_superstate(L);
    CHECK(I(0) == cd(1, 0));  // (0,0)
    CHECK(I(1) == cd(0, 0));  // (0,1)
    CHECK(I(2) == cd(0, 0));  // (1,0)
    CHECK(I(3) == cd(1, 0));  // (1,1)
    CHECK(I.dot(I).real() == 2.0);
}

TEST_CASE("geometric superstate reproduces the closed-form weights") {
    auto L = boson({40});
    VecC rho = geometric_superstate(L, {1.0});
    // p_m = (1/2)^(m+1) up to the 2^-41 truncation renormalization.
    for (int m = 0; m <= 5; ++m) {
        const double want = std::pow(0.5, m + 1);
        const double got =
            rho(static_cast<Eigen::Index>(
                    L.pair_index(L.fock().index({m}), L.fock().index({m}))))
                .real();
        CHECK(std::abs(got - want) < 1e-11);
    }
    CHECK(std::abs(mean_occupation(L, rho, 0) - 1.0) < 1e-9);

    auto Lf = fermion(1);
    VecC rf = geometric_superstate(Lf, {0.5});
    CHECK(rf(0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rf(3).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(mean_occupation(Lf, rf, 0) - 0.5) < 1e-15);

    VecC vac = geometric_superstate(L, {0.0});
    CHECK(vac(0) == cd(1, 0));
    CHECK(vac.cwiseAbs().sum() == 1.0);
}

TEST_CASE("trace pairing recovers the mean occupation at deep cutoff") {
    auto L = boson({60});
    VecC rho = geometric_superstate(L, {0.5});
    const SpMatC num = check_creator(L, 0) * check_annihilator(L, 0);
    const cd val = identity_bra_times(L, num).cwiseProduct(rho).sum();
    CHECK(std::abs(val.real() - 0.5) < 1e-12);
    CHECK(std::abs(val.imag()) == 0.0);
}

TEST_CASE("density-property checks flag a perturbed state") {
    auto L = boson({6});
    VecC rho = geometric_superstate(L, {0.3});
    auto ok = check_density_properties(L, rho);
    CHECK(ok.hermiticity == 0.0);
    CHECK(ok.trace_error < 1e-15);
    CHECK(ok.min_eigenvalue >= 0.0);

    VecC bad = rho;
    bad(1) += cd(0.05, 0.02);  // off-diagonal without its mirror
    auto flags = check_density_properties(L, bad);
    CHECK(flags.hermiticity > 0.01);
}

TEST_CASE("hat map of a frequency bilinear acts as the commutator") {
    auto L = boson({4});
    const double w = 1.7;
    MatC h = MatC::Constant(1, 1, cd(w, 0));
    SpMatC H = hat_from_single_body(L, h);
    // On |m,n>> the commutator gives w (m - n).
    for (std::size_t i = 0; i < L.dim(); ++i) {
        VecC e = VecC::Zero(static_cast<Eigen::Index>(L.dim()));
        e(static_cast<Eigen::Index>(i)) = cd(1, 0);
        VecC out = H * e;
        const double want = w * (L.mu(i) - L.nu(i));
        CHECK(std::abs(out(static_cast<Eigen::Index>(i)).real() - want) < 1e-13);
    }
    CHECK(identity_bra_times(L, H).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tilde conjugation of a scaled annihilator conjugates the scalar") {
    auto L = boson({3});
    const cd c(0.8, -0.6);
    SpMatC lhs = tilde_of(L, SpMatC(c * check_annihilator(L, 0)));
    SpMatC rhs = std::conj(c) * tilde_annihilator(L, 0);
    CHECK((MatC(lhs) - MatC(rhs)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("algebra suite: single boson mode across cutoffs") {
    for (int M : {4, 8, 16}) {
        auto rep = run_algebra_suite(boson({M}));
        for (const auto& c : rep.checks) {
            INFO(c.name << " cutoff " << M << " residual " << c.residual);
            CHECK(c.pass());
        }
        CHECK(rep.max_residual() < 1e-12);
    }
}

TEST_CASE("algebra suite: two boson modes with uneven cutoffs") {
    auto rep = run_algebra_suite(boson({3, 2}));
    for (const auto& c : rep.checks) {
        INFO(c.name << " residual " << c.residual);
        CHECK(c.pass());
    }
}

TEST_CASE("algebra suite: fermion chains are exact") {
    for (int modes : {1, 2, 3}) {
        auto rep = run_algebra_suite(fermion(modes));
        for (const auto& c : rep.checks) {
            INFO(c.name << " modes " << modes << " residual " << c.residual);
            CHECK(c.pass());
        }
    }
}
