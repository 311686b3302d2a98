#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "tfd/errors.hpp"
#include "tfd/interaction.hpp"
#include "tfd/kinetics.hpp"
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

KineticHistory frozen_history(const std::vector<double>& nodes,
                              const std::vector<double>& n) {
    KineticHistory h;
    h.times = nodes;
    h.occupations.assign(nodes.size(), n);
    return h;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("collision map conserves number always and energy on resonance") {
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const std::vector<double> n{0.9, 0.4, 0.15};

    const InteractionModel ladder = resonant_ladder_model(0.1);
    const std::vector<double> r1 = markovian_collision(ladder, omega, n, 0.4);
    CHECK(std::abs(total_number(r1)) < 1e-14);
    CHECK(std::abs(total_energy(omega, r1)) < 1e-14);

    // The augmented model adds a detuned pair channel: number stays
    // conserved (every channel is 2-to-2) but energy leaks off shell.
    const InteractionModel aug = augmented_ladder_model(0.1);
    const std::vector<double> r2 = markovian_collision(aug, omega, n, 0.4);
    CHECK(std::abs(total_number(r2)) < 1e-14);
    CHECK(std::abs(total_energy(omega, r2)) > 1e-6);
}

TEST_CASE("Bose-Einstein occupations are a fixed point of both closures") {
    const std::vector<double> omega{1.0, 2.0, 3.0};
    // beta = ln 2, e^{beta mu} = 4/3 gives exactly (2.0, 0.5, 0.2).
    const std::vector<double> nbe =
        bose_einstein_occupations(omega, std::log(2.0), std::log(4.0 / 3.0) / std::log(2.0));
    CHECK(std::abs(nbe[0] - 2.0) < 1e-13);
    CHECK(std::abs(nbe[1] - 0.5) < 1e-13);
    CHECK(std::abs(nbe[2] - 0.2) < 1e-13);

    const InteractionModel ladder = resonant_ladder_model(0.1);
    CHECK(max_abs(markovian_collision(ladder, omega, nbe, 0.3)) < 1e-14);

    std::vector<double> nodes;
    for (int i = 0; i <= 40; ++i) nodes.push_back(0.05 * i);
    const KineticHistory h = frozen_history(nodes, nbe);
    CHECK(max_abs(transport_rhs(ladder, omega, h, 2.0, 0.0)) < 1e-14);
}

TEST_CASE("detailed-balance perturbation relaxes in the right direction") {
    const std::vector<double> omega{1.0, 2.0, 3.0};
    std::vector<double> n{2.0, 0.5, 0.2};
    n[1] += 0.1;  // overfill the middle rung
    const InteractionModel ladder = resonant_ladder_model(0.1);
    const std::vector<double> rate = markovian_collision(ladder, omega, n, 0.3);
    CHECK(rate[1] < 0.0);
    CHECK(rate[0] > 0.0);
    CHECK(rate[2] > 0.0);
    // The 0,2 <-> 1,1 process moves quanta pairwise.
    CHECK(std::abs(rate[0] - rate[2]) < 1e-14);
    CHECK(std::abs(rate[1] + 2.0 * rate[0]) < 1e-14);
}

TEST_CASE("argument validation of the kinetic evaluators") {
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const std::vector<double> n{0.5, 0.5, 0.5};
    const InteractionModel ladder = resonant_ladder_model(0.1);

    CHECK_THROWS_AS(markovian_collision(ladder, omega, n, 0.0), ConfigError);
    CHECK_THROWS_AS(markovian_collision(ladder, omega, n, -0.1), ConfigError);
    CHECK_THROWS_AS(markovian_collision(ladder, {1.0, 2.0}, n, 0.3),
                    ConfigError);
    CHECK_THROWS_AS(
        markovian_collision(ladder, omega, {0.5, 0.5}, 0.3), ConfigError);

    const KineticHistory h = frozen_history({0.0, 0.5, 1.0}, n);
    // Causality: the history may not extend past the evaluation time.
    CHECK_THROWS_AS(transport_rhs(ladder, omega, h, 0.7, 0.0), ConfigError);
    CHECK_THROWS_AS(transport_rhs(ladder, omega, h, 1.0, -0.2), ConfigError);
    KineticHistory bad = h;
    bad.times[1] = 0.0;
    CHECK_THROWS_AS(transport_rhs(ladder, omega, bad, 1.0, 0.0), ConfigError);

    KineticOptions opt;
    opt.mode = KineticMode::Markovian;
    opt.gamma_markov = 0.0;
    CHECK_THROWS_AS(relax(ladder, omega, n, 0.0, 1.0, opt), ConfigError);
    CHECK_THROWS_AS(relax(ladder, omega, {0.5, -0.1, 0.5}, 0.0, 1.0, {}),
                    ConfigError);
    CHECK_THROWS_AS(relax(ladder, omega, n, 1.0, 1.0, {}), ConfigError);
}

TEST_CASE("memory quadrature matches the closed-form loop integrand") {
    // With occupations frozen on the history nodes the transport quadrature
    // must reproduce a trapezoid over the loop-kernel integrand evaluated
    // from the self-energy side (independent code path, same physics).
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const std::vector<double> n{0.8, 0.3, 0.25};
    const InteractionModel aug = augmented_ladder_model(0.2);
    const ThermalSchedule sched = static_schedule(omega, n);
    const std::vector<double> nodes{0.0, 0.17, 0.4, 0.55, 0.61};
    const double t = nodes.back();
    const KineticHistory h = frozen_history(nodes, n);
    const std::vector<double> rhs = transport_rhs(aug, omega, h, t, 0.0);
    for (int j = 0; j < aug.n_modes(); ++j) {
        double ref = 0.0;
        for (std::size_t i = 1; i < nodes.size(); ++i)
            ref += 0.5 * (nodes[i] - nodes[i - 1]) *
                   (qte_integrand(aug, sched, j, t, nodes[i - 1]) +
                    qte_integrand(aug, sched, j, t, nodes[i]));
        CHECK(std::abs(rhs[static_cast<std::size_t>(j)] - ref) < 1e-13);
    }
}

TEST_CASE("memory relaxation conserves the resonant collision invariants") {
    // Coupling kept moderate: the undamped memory closure oscillates around
    // the fixed point, and too strong a swing would cross the positivity
    // boundary (where the literal second-order equation stops making sense).
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const InteractionModel ladder = resonant_ladder_model(0.15);
    const std::vector<double> n0{1.2, 1.1, 0.1};
    KineticOptions opt;
    opt.step = 0.05;
    const KineticHistory traj = relax(ladder, omega, n0, 0.0, 1.5, opt);
    REQUIRE(traj.times.size() > 10);
    const double n_tot = total_number(n0), e_tot = total_energy(omega, n0);
    for (const std::vector<double>& n : traj.occupations) {
        CHECK(std::abs(total_number(n) - n_tot) < 1e-12);
        CHECK(std::abs(total_energy(omega, n) - e_tot) < 1e-12);
    }
    // Stationarity when started exactly at the fixed point.
    const std::vector<double> nbe = bose_einstein_occupations(
        omega, std::log(2.0), std::log(4.0 / 3.0) / std::log(2.0));
    const KineticHistory still = relax(ladder, omega, nbe, 0.0, 1.5, opt);
    for (const std::vector<double>& n : still.occupations)
        for (std::size_t j = 0; j < n.size(); ++j)
            CHECK(std::abs(n[j] - nbe[j]) < 1e-12);
}

TEST_CASE("Markovian relaxation reaches the entropy-maximizing distribution") {
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const InteractionModel ladder = resonant_ladder_model(0.3);
    const std::vector<double> n0{1.2, 1.1, 0.1};
    KineticOptions opt;
    opt.mode = KineticMode::Markovian;
    opt.gamma_markov = 0.5;
    opt.step = 0.02;
    const KineticHistory traj = relax(ladder, omega, n0, 0.0, 8.0, opt);

    // H-theorem: the mode entropy never decreases along the trajectory.
    for (std::size_t i = 1; i < traj.occupations.size(); ++i)
        CHECK(occupation_entropy(traj.occupations[i]) >=
              occupation_entropy(traj.occupations[i - 1]) - 1e-9);

    // The end state is the Bose-Einstein distribution fixed by the two
    // conserved moments of the initial data.
    const BoseEinsteinFit fit = bose_einstein_fit(
        omega, total_number(n0), total_energy(omega, n0));
    const std::vector<double> nbe =
        bose_einstein_occupations(omega, fit.beta, fit.mu);
    for (std::size_t j = 0; j < nbe.size(); ++j)
        CHECK(std::abs(traj.occupations.back()[j] - nbe[j]) < 1e-6);
}

TEST_CASE("thermodynamic fit inverts the conserved moments") {
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const BoseEinsteinFit fit = bose_einstein_fit(omega, 2.7, 3.6);
    CHECK(std::abs(fit.beta - std::log(2.0)) < 1e-9);
    CHECK(std::abs(fit.mu - std::log(4.0 / 3.0) / std::log(2.0)) < 1e-9);
    const std::vector<double> n =
        bose_einstein_occupations(omega, fit.beta, fit.mu);
    CHECK(std::abs(n[0] - 2.0) < 1e-10);
    CHECK(std::abs(n[1] - 0.5) < 1e-10);
    CHECK(std::abs(n[2] - 0.2) < 1e-10);

    // Dilute corner: large negative mu, small occupations.
    const BoseEinsteinFit dilute = bose_einstein_fit(omega, 0.05, 0.071);
    const std::vector<double> nd =
        bose_einstein_occupations(omega, dilute.beta, dilute.mu);
    CHECK(std::abs(total_number(nd) - 0.05) < 1e-12);
    CHECK(std::abs(total_energy(omega, nd) - 0.071) < 1e-12);

    // Outside the positive-temperature window: energy at or below the
    // ground-state bound, or at or above the equipartition bound.
    CHECK_THROWS_AS(bose_einstein_fit(omega, 1.0, 0.9), NumericsError);
    CHECK_THROWS_AS(bose_einstein_fit(omega, 1.0, 2.2), NumericsError);
}

TEST_CASE("positivity guard halves the step and eventually gives up") {
    const std::vector<double> omega{1.0, 2.0, 3.0};
    // Only the middle rung is occupied, so the resonant process drains it;
    // a huge step would overshoot into negative occupations.
    const std::vector<double> n0{0.0, 1.0, 0.0};
    const InteractionModel ladder = resonant_ladder_model(2.0);
    KineticOptions opt;
    opt.mode = KineticMode::Markovian;
    opt.gamma_markov = 0.05;
    opt.step = 50.0;
    const KineticHistory traj = relax(ladder, omega, n0, 0.0, 50.0, opt);
    for (const std::vector<double>& n : traj.occupations)
        for (const double v : n) CHECK(v >= 0.0);
    for (std::size_t i = 1; i < traj.times.size(); ++i)
        CHECK(traj.times[i] > traj.times[i - 1]);

    KineticOptions strict = opt;
    strict.max_halvings = 0;
    CHECK_THROWS_AS(relax(ladder, omega, n0, 0.0, 50.0, strict),
                    NumericsError);
}

TEST_CASE("damped memory kernel converges to the Markovian map") {
    // Frozen occupations, long history: the damped memory integral tends to
    // the Lorentzian-broadened collision map with the same width.
    const std::vector<double> omega{1.0, 2.0, 3.0};
    const std::vector<double> n{0.8, 0.3, 0.25};
    const InteractionModel aug = augmented_ladder_model(0.2);
    const double gamma = 0.5;
    std::vector<double> nodes;
    const int steps = 4800;
    for (int i = 0; i <= steps; ++i)
        nodes.push_back(24.0 * static_cast<double>(i) / steps);
    const KineticHistory h = frozen_history(nodes, n);
    const std::vector<double> mem =
        transport_rhs(aug, omega, h, nodes.back(), gamma);
    const std::vector<double> mark = markovian_collision(aug, omega, n, gamma);
    for (std::size_t j = 0; j < mem.size(); ++j)
        CHECK(std::abs(mem[j] - mark[j]) < 1e-5 + 1e-3 * std::abs(mark[j]));
}
