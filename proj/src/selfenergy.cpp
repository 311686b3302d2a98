#include "tfd/selfenergy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "tfd/errors.hpp"

namespace tfd {

namespace {

std::vector<double> occupations_at(const ThermalSchedule& sched, double t) {
    std::vector<double> n(sched.size());
    for (std::size_t j = 0; j < sched.size(); ++j)
        n[j] = sched[j].occupation.value(t);
    return n;
}

// Channel phase int_s^t (omega_l + omega_m - omega_k); exact via the
// schedule integrals, sign-correct for either time ordering.
double channel_phase(const ThermalSchedule& sched, const SunsetChannel& c,
                     double t, double s) {
    return sched[c.l].omega.integral(s, t) + sched[c.m].omega.integral(s, t) -
           sched[c.k].omega.integral(s, t);
}

double lorentzian(double x, double gamma) {
    return (gamma / M_PI) / (x * x + gamma * gamma);
}

void check_mode(const InteractionModel& model, int j, const char* where) {
    if (j < 0 || j >= model.n_modes())
        throw ConfigError(std::string(where) + ": mode index out of range");
}

}  // namespace

std::vector<SunsetChannel> sunset_channels(const InteractionModel& model,
                                           int j) {
    check_mode(model, j, "sunset_channels");
    std::vector<SunsetChannel> out;
    for (const auto& [idx, v] : model.table())
        if (idx[0] == j)
            out.push_back({idx[1], idx[2], idx[3], std::norm(v)});
    return out;
}

double channel_bracket_s11(const SunsetChannel& c,
                           const std::vector<double>& n) {
    return n[c.l] * n[c.m] * (1.0 + n[c.k]) -
           (1.0 + n[c.l]) * (1.0 + n[c.m]) * n[c.k];
}

double channel_bracket_collision(const SunsetChannel& c, int j,
                                 const std::vector<double>& n) {
    return (1.0 + n[j]) * (1.0 + n[c.k]) * n[c.l] * n[c.m] -
           n[j] * n[c.k] * (1.0 + n[c.l]) * (1.0 + n[c.m]);
}

Eigen::Matrix2cd self_energy_second_order(const InteractionModel& model,
                                          const ThermalSchedule& sched, int j,
                                          double t, double s) {
    check_mode(model, j, "self_energy_second_order");
    if (sched.size() != static_cast<std::size_t>(model.n_modes()))
        throw ConfigError("self_energy_second_order: schedule size mismatch");
    const double tmin = std::min(t, s);
    const std::vector<double> n = occupations_at(sched, tmin);
    const double common = 8.0 * model.lambda() * model.lambda();

    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (const SunsetChannel& c : sunset_channels(model, j)) {
        const cd phase = std::exp(cd(0.0, -channel_phase(sched, c, t, s)));
        const cd amp = cd(0.0, common * c.weight2) * phase;
        out(0, 1) += amp * channel_bracket_collision(c, j, n);
        const double b11 = channel_bracket_s11(c, n);
        if (t >= s) out(0, 0) += amp * b11;
        if (s >= t) out(1, 1) -= amp * b11;
    }
    return out;
}

TwoTimeKernel tabulate_self_energy(const InteractionModel& model,
                                   const ThermalSchedule& sched, int j,
                                   const std::vector<double>& times) {
    TwoTimeKernel ker;
    ker.kind = KernelKind::S;
    ker.j = j;
    ker.k = j;
    ker.times = times;
    const std::size_t nt = times.size();
    ker.blocks.assign(nt * nt, Eigen::Matrix2cd::Zero());
    for (std::size_t i1 = 0; i1 < nt; ++i1)
        for (std::size_t i2 = 0; i2 < nt; ++i2)
            ker.block(i1, i2) =
                self_energy_second_order(model, sched, j, times[i1], times[i2]);
    return ker;
}

double qte_integrand(const InteractionModel& model,
                     const ThermalSchedule& sched, int j, double t, double s) {
    check_mode(model, j, "qte_integrand");
    const std::vector<double> n = occupations_at(sched, std::min(t, s));
    const double common = 16.0 * model.lambda() * model.lambda();
    double rate = 0.0;
    for (const SunsetChannel& c : sunset_channels(model, j)) {
        const double psi = sched[j].omega.integral(s, t) +
                           sched[c.k].omega.integral(s, t) -
                           sched[c.l].omega.integral(s, t) -
                           sched[c.m].omega.integral(s, t);
        rate += common * c.weight2 * std::cos(psi) *
                channel_bracket_collision(c, j, n);
    }
    return rate;
}

cd equilibrium_s11(const InteractionModel& model, const std::vector<double>& n,
                   int j, double k0, double gamma_s) {
    check_mode(model, j, "equilibrium_s11");
    if (!(gamma_s > 0.0))
        throw ConfigError("equilibrium_s11: gamma_s must be positive");
    const auto& w0 = model.omega0();
    const double common = 8.0 * model.lambda() * model.lambda();
    cd out(0.0, 0.0);
    for (const SunsetChannel& c : sunset_channels(model, j)) {
        const double omega_c = w0[c.l] + w0[c.m] - w0[c.k];
        const double wc = -common * c.weight2 * channel_bracket_s11(c, n);
        out += wc / cd(k0 - omega_c, gamma_s);
    }
    return out;
}

double equilibrium_spectral_density(const InteractionModel& model,
                                    const std::vector<double>& n, int j,
                                    double k0, double gamma_s) {
    check_mode(model, j, "equilibrium_spectral_density");
    if (!(gamma_s > 0.0))
        throw ConfigError("equilibrium_spectral_density: gamma_s must be positive");
    const auto& w0 = model.omega0();
    const double common = 8.0 * model.lambda() * model.lambda();
    double out = 0.0;
    for (const SunsetChannel& c : sunset_channels(model, j)) {
        const double omega_c = w0[c.l] + w0[c.m] - w0[c.k];
        const double wc = -common * c.weight2 * channel_bracket_s11(c, n);
        out += wc * lorentzian(k0 - omega_c, gamma_s);
    }
    return out;
}

cd equilibrium_s12(const InteractionModel& model, const std::vector<double>& n,
                   int j, double k0, double gamma_s) {
    check_mode(model, j, "equilibrium_s12");
    if (!(gamma_s > 0.0))
        throw ConfigError("equilibrium_s12: gamma_s must be positive");
    const auto& w0 = model.omega0();
    const double common = 8.0 * model.lambda() * model.lambda();
    cd out(0.0, 0.0);
    for (const SunsetChannel& c : sunset_channels(model, j)) {
        const double omega_c = w0[c.l] + w0[c.m] - w0[c.k];
        out += cd(0.0, 2.0 * M_PI * lorentzian(k0 - omega_c, gamma_s) *
                           common * c.weight2 *
                           channel_bracket_collision(c, j, n));
    }
    return out;
}

}  // namespace tfd
