#include "tfd/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include "tfd/errors.hpp"
#include "tfd/selfenergy.hpp"

namespace tfd {

namespace {

void check_kinetic_args(const InteractionModel& model,
                        const std::vector<double>& omega,
                        const std::vector<double>& n) {
    const int modes = model.n_modes();
    if (static_cast<int>(omega.size()) != modes)
        throw ConfigError("kinetics: frequency vector has " +
                          std::to_string(omega.size()) + " entries, model has " +
                          std::to_string(modes) + " modes");
    if (static_cast<int>(n.size()) != modes)
        throw ConfigError("kinetics: occupation vector has " +
                          std::to_string(n.size()) + " entries, model has " +
                          std::to_string(modes) + " modes");
}

double channel_detuning(const std::vector<double>& omega, int j,
                        const SunsetChannel& c) {
    return omega[static_cast<std::size_t>(j)] +
           omega[static_cast<std::size_t>(c.k)] -
           omega[static_cast<std::size_t>(c.l)] -
           omega[static_cast<std::size_t>(c.m)];
}

// Collision kernel of every mode at one memory node: the integrand of the
// memory closure at separation tau = t - s with occupations frozen at s.
std::vector<double> kernel_at(const InteractionModel& model,
                              const std::vector<double>& omega,
                              const std::vector<std::vector<SunsetChannel>>& ch,
                              const std::vector<double>& n, double tau,
                              double gamma_delta) {
    const double damp = gamma_delta > 0.0 ? std::exp(-gamma_delta * tau) : 1.0;
    const double pref = 16.0 * model.lambda() * model.lambda() * damp;
    std::vector<double> out(ch.size(), 0.0);
    for (std::size_t j = 0; j < ch.size(); ++j) {
        double acc = 0.0;
        for (const SunsetChannel& c : ch[j]) {
            const double dw = channel_detuning(omega, static_cast<int>(j), c);
            acc += c.weight2 * std::cos(dw * tau) *
                   channel_bracket_collision(c, static_cast<int>(j), n);
        }
        out[j] = pref * acc;
    }
    return out;
}

std::vector<std::vector<SunsetChannel>> all_channels(
    const InteractionModel& model) {
    std::vector<std::vector<SunsetChannel>> ch;
    ch.reserve(static_cast<std::size_t>(model.n_modes()));
    for (int j = 0; j < model.n_modes(); ++j)
        ch.push_back(sunset_channels(model, j));
    return ch;
}

bool any_negative(const std::vector<double>& n) {
    return std::any_of(n.begin(), n.end(), [](double v) { return v < 0.0; });
}

std::vector<double> axpy(const std::vector<double>& n, double h,
                         const std::vector<double>& f) {
    std::vector<double> out(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) out[i] = n[i] + h * f[i];
    return out;
}

std::vector<double> heun_combine(const std::vector<double>& n, double h,
                                 const std::vector<double>& f1,
                                 const std::vector<double>& f2) {
    std::vector<double> out(n.size());
    for (std::size_t i = 0; i < n.size(); ++i)
        out[i] = n[i] + 0.5 * h * (f1[i] + f2[i]);
    return out;
}

}  // namespace

std::vector<double> markovian_collision(const InteractionModel& model,
                                        const std::vector<double>& omega,
                                        const std::vector<double>& n,
                                        double gamma_markov) {
    check_kinetic_args(model, omega, n);
    if (!(gamma_markov > 0.0))
        throw ConfigError("markovian_collision: gamma_markov must be > 0 "
                          "(broadened on-shell delta)");
    const double pref = 16.0 * model.lambda() * model.lambda();
    std::vector<double> out(omega.size(), 0.0);
    for (int j = 0; j < model.n_modes(); ++j) {
        double acc = 0.0;
        for (const SunsetChannel& c : sunset_channels(model, j)) {
            const double dw = channel_detuning(omega, j, c);
            const double lorentz =
                gamma_markov / (dw * dw + gamma_markov * gamma_markov);
            acc += c.weight2 * lorentz * channel_bracket_collision(c, j, n);
        }
        out[static_cast<std::size_t>(j)] = pref * acc;
    }
    return out;
}

std::vector<double> transport_rhs(const InteractionModel& model,
                                  const std::vector<double>& omega,
                                  const KineticHistory& history, double t,
                                  double gamma_delta) {
    if (history.times.empty() ||
        history.times.size() != history.occupations.size())
        throw ConfigError("transport_rhs: empty or inconsistent history");
    check_kinetic_args(model, omega, history.occupations.front());
    for (std::size_t i = 1; i < history.times.size(); ++i)
        if (!(history.times[i] > history.times[i - 1]))
            throw ConfigError("transport_rhs: history times must increase");
    if (history.times.back() > t + 1e-12)
        throw ConfigError("transport_rhs: history extends past the "
                          "evaluation time (causality)");
    if (gamma_delta < 0.0)
        throw ConfigError("transport_rhs: gamma_delta must be >= 0");

    const auto ch = all_channels(model);
    std::vector<double> rhs(omega.size(), 0.0);
    std::vector<double> prev;
    for (std::size_t i = 0; i < history.times.size(); ++i) {
        std::vector<double> cur = kernel_at(model, omega, ch,
                                            history.occupations[i],
                                            t - history.times[i], gamma_delta);
        if (i > 0) {
            const double w = 0.5 * (history.times[i] - history.times[i - 1]);
            for (std::size_t j = 0; j < rhs.size(); ++j)
                rhs[j] += w * (prev[j] + cur[j]);
        }
        prev = std::move(cur);
    }
    return rhs;
}

KineticHistory relax(const InteractionModel& model,
                     const std::vector<double>& omega,
                     const std::vector<double>& n0, double t0, double t_end,
                     const KineticOptions& opt) {
    check_kinetic_args(model, omega, n0);
    if (any_negative(n0))
        throw ConfigError("relax: initial occupations must be nonnegative");
    if (!(t_end > t0)) throw ConfigError("relax: t_end must exceed t0");
    if (!(opt.step > 0.0)) throw ConfigError("relax: step must be > 0");
    if (opt.mode == KineticMode::Markovian && !(opt.gamma_markov > 0.0))
        throw ConfigError("relax: Markovian mode needs gamma_markov > 0");

    KineticHistory traj;
    traj.times.push_back(t0);
    traj.occupations.push_back(n0);

    double t = t0;
    while (t < t_end - 1e-12) {
        // By value: the provisional push_back below may reallocate.
        const std::vector<double> n = traj.occupations.back();
        double h = std::min(opt.step, t_end - t);
        bool accepted = false;
        for (int halving = 0; halving <= opt.max_halvings; ++halving) {
            if (opt.mode == KineticMode::Markovian) {
                const std::vector<double> f1 =
                    markovian_collision(model, omega, n, opt.gamma_markov);
                const std::vector<double> np = axpy(n, h, f1);
                if (any_negative(np)) {
                    h *= 0.5;
                    continue;
                }
                const std::vector<double> f2 =
                    markovian_collision(model, omega, np, opt.gamma_markov);
                const std::vector<double> nc = heun_combine(n, h, f1, f2);
                if (any_negative(nc)) {
                    h *= 0.5;
                    continue;
                }
                traj.times.push_back(t + h);
                traj.occupations.push_back(nc);
            } else {
                const std::vector<double> f1 =
                    transport_rhs(model, omega, traj, t, opt.gamma_delta);
                const std::vector<double> np = axpy(n, h, f1);
                if (any_negative(np)) {
                    h *= 0.5;
                    continue;
                }
                // Provisional end point joins the corrector-stage memory.
                traj.times.push_back(t + h);
                traj.occupations.push_back(np);
                const std::vector<double> f2 =
                    transport_rhs(model, omega, traj, t + h, opt.gamma_delta);
                const std::vector<double> nc = heun_combine(n, h, f1, f2);
                if (any_negative(nc)) {
                    traj.times.pop_back();
                    traj.occupations.pop_back();
                    h *= 0.5;
                    continue;
                }
                traj.occupations.back() = nc;
            }
            accepted = true;
            break;
        }
        if (!accepted)
            throw NumericsError("relax: occupation positivity could not be "
                                "maintained after " +
                                std::to_string(opt.max_halvings) +
                                " step halvings near t = " + std::to_string(t));
        if (traj.times.size() > opt.max_steps)
            throw NumericsError("relax: step cap exceeded near t = " +
                                std::to_string(t) +
                                " (solution likely pinned at the positivity "
                                "boundary)");
        t = traj.times.back();
    }
    return traj;
}

std::vector<double> bose_einstein_occupations(const std::vector<double>& omega,
                                              double beta, double mu) {
    if (omega.empty()) throw ConfigError("bose_einstein: no modes");
    if (!(beta > 0.0)) throw ConfigError("bose_einstein: beta must be > 0");
    const double wmin = *std::min_element(omega.begin(), omega.end());
    if (!(mu < wmin))
        throw ConfigError("bose_einstein: mu must lie below the lowest mode");
    std::vector<double> n(omega.size());
    for (std::size_t j = 0; j < omega.size(); ++j)
        n[j] = 1.0 / std::expm1(beta * (omega[j] - mu));
    return n;
}

BoseEinsteinFit bose_einstein_fit(const std::vector<double>& omega,
                                  double total_number, double total_energy) {
    if (omega.empty()) throw ConfigError("bose_einstein_fit: no modes");
    const double wmin = *std::min_element(omega.begin(), omega.end());
    const double wmean =
        std::accumulate(omega.begin(), omega.end(), 0.0) /
        static_cast<double>(omega.size());
    if (!(total_number > 0.0))
        throw NumericsError("bose_einstein_fit: total number must be > 0");
    // The positive-temperature family spans energies strictly between
    // N * min(omega) (ground-state limit) and N * mean(omega) (beta -> 0).
    if (!(total_energy > total_number * wmin) ||
        !(total_energy < total_number * wmean))
        throw NumericsError("bose_einstein_fit: (number, energy) targets "
                            "outside the positive-temperature window");

    double x = 0.0, y = 0.0;  // mu = wmin - e^x, beta = e^y
    const double scale = 1.0 + std::abs(total_number) + std::abs(total_energy);
    BoseEinsteinFit fit;
    double res_norm = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double beta = std::exp(y);
        const double mu = wmin - std::exp(x);
        double sn = 0.0, se = 0.0;
        double dn_dx = 0.0, dn_dy = 0.0, de_dx = 0.0, de_dy = 0.0;
        for (const double w : omega) {
            const double n = 1.0 / std::expm1(beta * (w - mu));
            const double s = -n * (1.0 + n);  // dn/dtheta, theta = beta (w-mu)
            const double dth_dx = beta * std::exp(x);
            const double dth_dy = beta * (w - mu);
            sn += n;
            se += w * n;
            dn_dx += s * dth_dx;
            dn_dy += s * dth_dy;
            de_dx += w * s * dth_dx;
            de_dy += w * s * dth_dy;
        }
        const double fn = sn - total_number;
        const double fe = se - total_energy;
        res_norm = std::abs(fn) + std::abs(fe);
        fit.beta = beta;
        fit.mu = mu;
        fit.iterations = iter;
        if (res_norm < 1e-12 * scale) return fit;

        const double det = dn_dx * de_dy - dn_dy * de_dx;
        if (std::abs(det) < 1e-300)
            throw NumericsError("bose_einstein_fit: singular Jacobian");
        double dx = -(de_dy * fn - dn_dy * fe) / det;
        double dy = -(-de_dx * fn + dn_dx * fe) / det;
        // Damped update: cap the unconstrained step to keep exp() sane.
        const double cap = 2.0;
        const double mag = std::max(std::abs(dx), std::abs(dy));
        if (mag > cap) {
            dx *= cap / mag;
            dy *= cap / mag;
        }
        x += dx;
        y += dy;
    }
    throw NumericsError("bose_einstein_fit: no convergence after 200 "
                        "iterations (residual " +
                        std::to_string(res_norm) + ")");
}

double occupation_entropy(const std::vector<double>& n) {
    double s = 0.0;
    for (const double v : n) {
        if (v <= 0.0) continue;  // n log n -> 0 as n -> 0+
        s += (1.0 + v) * std::log1p(v) - v * std::log(v);
    }
    return s;
}

double total_number(const std::vector<double>& n) {
    return std::accumulate(n.begin(), n.end(), 0.0);
}

double total_energy(const std::vector<double>& omega,
                    const std::vector<double>& n) {
    if (omega.size() != n.size())
        throw ConfigError("total_energy: size mismatch");
    double e = 0.0;
    for (std::size_t j = 0; j < n.size(); ++j) e += omega[j] * n[j];
    return e;
}

}  // namespace tfd
