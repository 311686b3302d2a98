#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstring>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "tfd/errors.hpp"
#include "tfd/green.hpp"
#include "tfd/interaction.hpp"
#include "tfd/kinetics.hpp"
#include "tfd/liouville.hpp"
#include "tfd/renorm.hpp"
#include "tfd/schedule.hpp"
#include "tfd/selfenergy.hpp"

using namespace tfd;

namespace {

ThermalSchedule static_schedule(const std::vector<double>& w,
                                const std::vector<double>& n) {
    ThermalSchedule sched(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        sched[j].omega = Schedule::constant(w[j]);
        sched[j].occupation = Schedule::constant(n[j]);
    }
    return sched;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / n;
    return g;
}

double max_abs(const Eigen::Matrix2cd& m) {
    double v = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) v = std::max(v, std::abs(m(r, c)));
    return v;
}

}  // namespace

TEST_CASE("transform of the zero kernel vanishes identically") {
    const InteractionModel free_model(Statistics::Boson, {1.0, 2.0, 3.0}, 0.0,
                                      {});
    const ThermalSchedule sched =
        static_schedule({1.0, 2.0, 3.0}, {0.4, 0.1, 0.2});
    const TwoTimeKernel kern =
        tabulate_self_energy(free_model, sched, 0, uniform_grid(0.0, 1.0, 10));
    const Eigen::Matrix2cd tr =
        onshell_transform(kern, Schedule::constant(1.0), 1.0, 1.0);
    CHECK(max_abs(tr) == 0.0);
}

TEST_CASE("time-translation-invariant transform matches a Fourier oracle") {
    // Static background: the transform must reduce to the plain frequency
    // integral of the kernel over the window.  The oracle integrates the
    // same rays by composite Simpson at four times the resolution, so the
    // difference seen here is the transform's own quadrature error.
    const InteractionModel model = resonant_ladder_model(0.2);
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const std::vector<double> n{0.8, 0.3, 0.25};
    const ThermalSchedule sched = static_schedule(omega, n);
    const int j = 0;
    const double t = 1.0, k0 = omega[0];

    const TwoTimeKernel kern =
        tabulate_self_energy(model, sched, j, uniform_grid(0.0, t, 500));
    const Eigen::Matrix2cd tr =
        onshell_transform(kern, Schedule::constant(k0), t, t);

    // Simpson oracle on the closed-form rays with the same branch masks.
    const int nn = 4000;  // even
    const double h = t / nn;
    Eigen::Matrix2cd oracle = Eigen::Matrix2cd::Zero();
    for (int i = 0; i <= nn; ++i) {
        const double s = t - static_cast<double>(i) * h;  // tau = t - s
        const double tau = t - s;
        Eigen::Matrix2cd ret = self_energy_second_order(model, sched, j, t, s);
        Eigen::Matrix2cd adv = self_energy_second_order(model, sched, j, s, t);
        ret(1, 0) = ret(1, 1) = cd(0.0, 0.0);
        adv(0, 0) = adv(1, 0) = cd(0.0, 0.0);
        const Eigen::Matrix2cd f = ret * std::exp(cd(0.0, k0 * tau)) +
                                   adv * std::exp(cd(0.0, -k0 * tau));
        const double w = (i == 0 || i == nn) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        oracle += (h / 3.0) * w * f;
    }
    CHECK(max_abs(Eigen::Matrix2cd(tr - oracle)) < 1e-6);
    // The 21 component is exactly zero by construction.
    CHECK(tr(1, 0).real() == 0.0);
    CHECK(tr(1, 0).imag() == 0.0);
}

TEST_CASE("mixed-component transform reduces to twice its retarded half") {
    // The conjugation antisymmetry of the 12 component folds the advanced
    // branch onto the retarded one: S12[w] = 2i Im int_0^T S12(t,t-tau)e^{i w tau}.
    const InteractionModel model = augmented_ladder_model(0.2);
    const ThermalSchedule sched =
        static_schedule({1.0, 2.0, 3.0}, {0.8, 0.3, 0.25});
    const std::vector<double> grid = uniform_grid(0.0, 1.5, 150);
    const double t = 1.5, k0 = 2.0;
    const TwoTimeKernel kern = tabulate_self_energy(model, sched, 1, grid);
    const Eigen::Matrix2cd tr =
        onshell_transform(kern, Schedule::constant(k0), t, t);

    cd half(0.0, 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const cd a = kern.block(grid.size() - 1, i - 1)(0, 1) *
                     std::exp(cd(0.0, k0 * (t - grid[i - 1])));
        const cd b = kern.block(grid.size() - 1, i)(0, 1) *
                     std::exp(cd(0.0, k0 * (t - grid[i])));
        half += 0.5 * (grid[i] - grid[i - 1]) * (a + b);
    }
    const cd expect = cd(0.0, 2.0) * half.imag();
    CHECK(std::abs(tr(0, 1) - expect) < 1e-13);
}

TEST_CASE("transform is bitwise blind to kernel samples beyond t") {
    const InteractionModel model = augmented_ladder_model(0.15);
    const ThermalSchedule sched =
        static_schedule({1.0, 2.0, 3.0}, {0.5, 0.2, 0.1});
    const std::vector<double> grid = uniform_grid(0.0, 1.2, 12);
    const double t = 0.8;
    TwoTimeKernel kern = tabulate_self_energy(model, sched, 0, grid);
    const Eigen::Matrix2cd base =
        onshell_transform(kern, Schedule::constant(1.0), t, 0.8);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i1 = 0; i1 < grid.size(); ++i1)
        for (std::size_t i2 = 0; i2 < grid.size(); ++i2)
            if (grid[i1] > t + 1e-12 || grid[i2] > t + 1e-12)
                kern.block(i1, i2).setConstant(cd(nan, nan));
    const Eigen::Matrix2cd poisoned =
        onshell_transform(kern, Schedule::constant(1.0), t, 0.8);
    CHECK(std::memcmp(base.data(), poisoned.data(), sizeof(cd) * 4) == 0);
}

TEST_CASE("transform argument validation") {
    const InteractionModel model = resonant_ladder_model(0.1);
    const ThermalSchedule sched =
        static_schedule({1.0, 2.0, 3.0}, {0.5, 0.2, 0.1});
    const TwoTimeKernel kern =
        tabulate_self_energy(model, sched, 0, uniform_grid(0.0, 1.0, 10));
    // Window reaching before the tabulated history.
    CHECK_THROWS_AS(onshell_transform(kern, Schedule::constant(1.0), 0.8, 2.0),
                    ConfigError);
    // Off-grid evaluation time.
    CHECK_THROWS_AS(
        onshell_transform(kern, Schedule::constant(1.0), 0.81, 0.5),
        ConfigError);
    CHECK_THROWS_AS(onshell_transform(kern, Schedule::constant(1.0), 0.8, 0.0),
                    ConfigError);
}

TEST_CASE("bracketed root solve on the real part") {
    const double root = equilibrium_onshell_solve(
        [](double k0) { return cd(k0 - 2.0, 0.3); }, 1.7, 1.0);
    CHECK(std::abs(root - 2.0) < 1e-12);
    // No sign change across the bracket: diagnostic failure.
    CHECK_THROWS_AS(equilibrium_onshell_solve(
                        [](double k0) { return cd(k0 * k0 + 1.0, 0.0); }, 0.0,
                        0.5),
                    NumericsError);
}

TEST_CASE("resonant equilibrium is an exact fixed point of both conditions") {
    const InteractionModel model = resonant_ladder_model(0.1);
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const std::vector<double> nbe = bose_einstein_occupations(
        omega, std::log(2.0), std::log(4.0 / 3.0) / std::log(2.0));
    const ThermalSchedule sched = static_schedule(omega, nbe);
    RenormOptions opt;
    opt.quad_step = 0.02;
    for (int j = 0; j < 3; ++j) {
        const OnShellResult res =
            new_renorm_step(model, sched, j, 2.0, 2.0, omega[static_cast<std::size_t>(j)], opt);
        CHECK(!res.omega_fallback);
        // On-shell the resonant loop phase is stationary, so the real part
        // vanishes identically and the frequency keeps its bare value.
        CHECK(std::abs(res.omega - omega[static_cast<std::size_t>(j)]) < 1e-10);
        CHECK(std::abs(res.ndot) < 1e-12);
        CHECK(res.stagger_residual < 1e-12);
        CHECK(res.re_s11_residual < 1e-10);
        CHECK(std::abs(res.transform(0, 1)) < 1e-12);
        CHECK(res.transform(1, 0).real() == 0.0);
        CHECK(res.transform(1, 0).imag() == 0.0);
        // Time independence of the solved frequency.
        const OnShellResult later =
            new_renorm_step(model, sched, j, 3.0, 2.0, omega[static_cast<std::size_t>(j)], opt);
        CHECK(std::abs(later.omega - res.omega) < 1e-10);
    }
}

TEST_CASE("zero coupling leaves the bare frequency and a silent mode") {
    const InteractionModel model(Statistics::Boson, {1.0, 2.0, 3.0}, 0.0, {});
    const ThermalSchedule sched =
        static_schedule({1.0, 2.0, 3.0}, {0.4, 0.1, 0.2});
    const OnShellResult res = new_renorm_step(model, sched, 1, 1.0, 1.0, 2.0);
    CHECK(res.omega == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(res.ndot == 0.0);
    CHECK(max_abs(res.transform) == 0.0);
}

TEST_CASE("frequency shift scales with the square of the coupling") {
    // The detuned pair channel of the augmented model pushes the middle-mode
    // frequency off its bare value at second order.  The loop transform is
    // exactly quadratic in the coupling; the solved root additionally feels
    // an O(lambda^4) feedback through the window-dependent slope of the
    // resonant channels, so it is compared at small coupling only.
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const std::vector<double> n{2.0, 0.5, 0.2};
    const ThermalSchedule sched = static_schedule(omega, n);
    const std::vector<double> grid = uniform_grid(0.0, 2.0, 200);
    const auto loop_t11 = [&](double lambda) {
        const InteractionModel model = augmented_ladder_model(lambda);
        const TwoTimeKernel kern = tabulate_self_energy(model, sched, 1, grid);
        return onshell_transform(kern, Schedule::constant(2.0), 2.0, 2.0)(0, 0)
            .real();
    };
    const double s1 = loop_t11(0.05), s2 = loop_t11(0.1);
    CHECK(std::abs(s1) > 1e-4);
    CHECK(std::abs(s2 / s1 - 4.0) < 1e-10);

    RenormOptions opt;
    opt.quad_step = 0.01;
    opt.bracket_half = 0.02;
    const InteractionModel model = augmented_ladder_model(0.02);
    const OnShellResult res = new_renorm_step(model, sched, 1, 2.0, 2.0, 2.0, opt);
    REQUIRE(!res.omega_fallback);
    const double slin = loop_t11(0.02);
    CHECK(std::abs(res.omega - 2.0 - slin) < 0.05 * std::abs(slin));
}

TEST_CASE("extracted rate equals the transport quadrature on shared nodes") {
    const InteractionModel model = augmented_ladder_model(0.2);
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const std::vector<double> n{0.8, 0.3, 0.25};
    const ThermalSchedule sched = static_schedule(omega, n);
    const double t = 2.0;
    RenormOptions opt;
    opt.quad_step = 0.01;

    KineticHistory hist;
    const int count = 200;
    for (int i = 0; i <= count; ++i) {
        hist.times.push_back(t * i / count);
        hist.occupations.push_back(n);
    }
    const std::vector<double> rhs = transport_rhs(model, omega, hist, t, 0.0);
    for (int j = 0; j < 3; ++j) {
        const OnShellResult res = new_renorm_step(
            model, sched, j, t, t, omega[static_cast<std::size_t>(j)], opt);
        CHECK(std::abs(res.ndot - rhs[static_cast<std::size_t>(j)]) < 1e-10);
    }
}

TEST_CASE("spectral model construction and validation") {
    const SpectralModel sp =
        lorentzian_spectral_model(2.0, 0.05, 0.7, 1.0, 3.0, 2001);
    double norm = 0.0;
    for (std::size_t i = 1; i < sp.kappa.size(); ++i)
        norm += 0.5 * (sp.kappa[i] - sp.kappa[i - 1]) *
                (sp.rho[i] + sp.rho[i - 1]);
    CHECK(std::abs(norm - 1.0) < 1e-12);

    SpectralModel bad = sp;
    for (double& r : bad.rho) r *= 2.0;
    CHECK_THROWS_AS(diagonalization_inconsistency_demo(bad, 0.02),
                    ConfigError);
    SpectralModel neg = sp;
    for (double& k : neg.kappa) k -= 1.5;  // grid dips below zero
    CHECK_THROWS_AS(diagonalization_inconsistency_demo(neg, 0.02),
                    ConfigError);
}

TEST_CASE("sharp-quasiparticle limit closes the occupation gap") {
    const auto gap_at = [](double width) {
        const SpectralModel sp =
            lorentzian_spectral_model(2.0, width, 0.7, 1.0, 3.0, 4001);
        const InconsistencyReport rep =
            diagonalization_inconsistency_demo(sp, 0.01, 0.4);
        CHECK(std::abs(rep.omega_onshell - 2.0) < 1e-3);
        return rep.gap;
    };
    const double g1 = gap_at(0.04), g2 = gap_at(0.01);
    CHECK(g1 < 0.01);
    CHECK(g2 < g1);
    // Heavy Lorentzian tails on a fixed window make the truncated variance
    // (hence the gap) scale roughly linearly with the width.
    CHECK(g1 / g2 > 2.5);
    CHECK(g1 / g2 < 6.0);
}

TEST_CASE("satellite weight opens a first-order occupation gap") {
    const double beta = 0.7, center = 2.0, satellite = 2.8;
    const auto demo = [&](double weight) {
        const SpectralModel sp = satellite_spectral_model(
            center, satellite, weight, 0.02, beta, 1.2, 3.4, 4401);
        return diagonalization_inconsistency_demo(sp, 0.01, 0.3);
    };
    const InconsistencyReport r1 = demo(0.04);
    // Analytic two-peak expectation: the satellite drags the averaged
    // occupation by weight * (n(sat) - n(main)) while the on-shell root
    // stays at the main peak.
    const auto occ = [&](double k) { return 1.0 / std::expm1(beta * k); };
    const double pred = 0.04 * std::abs(occ(satellite) - occ(r1.omega_onshell));
    CHECK(std::abs(r1.omega_onshell - center) < 5e-3);
    CHECK(std::abs(r1.gap - pred) < 0.1 * pred + 2e-4);

    const InconsistencyReport r2 = demo(0.01);
    CHECK(std::abs(r1.gap / r2.gap - 4.0) < 0.6);
}

TEST_CASE("exact engine confirms a nonzero equal-time mixed component") {
    // First-principles counterpart of the spectral-weight argument: in an
    // interacting two-mode run the Heisenberg occupation departs from the
    // quasiparticle parameter, so g12(t, t) = i (n_H - n) cannot be zeroed
    // by any single frequency assignment.
    const LiouvilleSpace L{FockSpace(Statistics::Boson, {4, 3})};
    const InteractionModel model(Statistics::Boson, {1.0, 1.0}, 0.2,
                                 {{0, 0, 1, 1, cd(1.0, 0.0)}});
    const ThermalSchedule sched = static_schedule({1.0, 1.0}, {0.15, 0.3});
    const std::vector<double> grid{0.0, 0.35, 0.7};
    const GreenFunctionSet gs = full_green(L, model, sched, 0, 0, grid);
    const std::size_t last = grid.size() - 1;
    const cd mixed = gs.g.block(last, last)(0, 1);
    CHECK(std::abs(mixed) > 5e-4);
    const cd expect(0.0, gs.n_heisenberg_j[last] - gs.n_schedule_j[last]);
    CHECK(std::abs(mixed - expect) < 5e-3);
}
