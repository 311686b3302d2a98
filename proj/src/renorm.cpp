#include "tfd/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>

#include "tfd/errors.hpp"
#include "tfd/selfenergy.hpp"

namespace tfd {

namespace {

Eigen::Matrix2cd mask_retarded(const Eigen::Matrix2cd& m) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    out(0, 0) = m(0, 0);
    out(0, 1) = m(0, 1);
    return out;
}

Eigen::Matrix2cd mask_advanced(const Eigen::Matrix2cd& m) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    out(0, 1) = m(0, 1);
    out(1, 1) = m(1, 1);
    return out;
}

// Shared quadrature for the on-shell transform: trapezoid over ascending
// memory nodes s_k ending at t, with ret[k] = S(t, s_k), adv[k] = S(s_k, t).
Eigen::Matrix2cd transform_from_rays(const std::vector<double>& s_nodes,
                                     const std::vector<Eigen::Matrix2cd>& ret,
                                     const std::vector<Eigen::Matrix2cd>& adv,
                                     const Schedule& omega, double t) {
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    Eigen::Matrix2cd prev = Eigen::Matrix2cd::Zero();
    for (std::size_t k = 0; k < s_nodes.size(); ++k) {
        const double phi = omega.integral(s_nodes[k], t);
        const cd e_ret = std::exp(cd(0.0, phi));
        const cd e_adv = std::exp(cd(0.0, -phi));
        const Eigen::Matrix2cd cur =
            mask_retarded(ret[k]) * e_ret + mask_advanced(adv[k]) * e_adv;
        if (k > 0)
            acc += 0.5 * (s_nodes[k] - s_nodes[k - 1]) * (prev + cur);
        prev = cur;
    }
    return acc;
}

double sum_weight2(const InteractionModel& model, int j) {
    double s = 0.0;
    for (const SunsetChannel& c : sunset_channels(model, j)) s += c.weight2;
    return s;
}

void check_spectral(const SpectralModel& sp) {
    if (sp.kappa.size() < 2 || sp.kappa.size() != sp.rho.size())
        throw ConfigError("spectral model: need matching kappa/rho grids");
    for (std::size_t i = 1; i < sp.kappa.size(); ++i)
        if (!(sp.kappa[i] > sp.kappa[i - 1]))
            throw ConfigError("spectral model: kappa grid must increase");
    if (!(sp.beta > 0.0)) throw ConfigError("spectral model: beta must be > 0");
    double norm = 0.0;
    for (std::size_t i = 1; i < sp.kappa.size(); ++i) {
        if (sp.rho[i] < -1e-12 || sp.rho[i - 1] < -1e-12)
            throw ConfigError("spectral model: negative spectral weight");
        norm += 0.5 * (sp.kappa[i] - sp.kappa[i - 1]) *
                (sp.rho[i] + sp.rho[i - 1]);
    }
    if (std::abs(norm - 1.0) > 1e-6)
        throw ConfigError("spectral model: unnormalized spectral input "
                          "(integral = " +
                          std::to_string(norm) + ")");
}

SpectralModel normalized_model(std::vector<double> kappa,
                               std::vector<double> rho, double beta) {
    double norm = 0.0;
    for (std::size_t i = 1; i < kappa.size(); ++i)
        norm += 0.5 * (kappa[i] - kappa[i - 1]) * (rho[i] + rho[i - 1]);
    for (double& r : rho) r /= norm;
    SpectralModel sp{std::move(kappa), std::move(rho), beta};
    check_spectral(sp);
    return sp;
}

}  // namespace

Eigen::Matrix2cd onshell_transform(const TwoTimeKernel& kernel,
                                   const Schedule& omega, double t,
                                   double t_mem) {
    if (!(t_mem > 0.0))
        throw ConfigError("onshell_transform: t_mem must be > 0");
    const std::vector<double>& times = kernel.times;
    std::size_t it = times.size();
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= 1e-9) {
            it = i;
            break;
        }
    if (it == times.size())
        throw ConfigError("onshell_transform: t is not a kernel grid node");
    const double start = t - t_mem;
    if (times.front() > start + 1e-9)
        throw ConfigError("onshell_transform: insufficient history (grid "
                          "starts after t - t_mem)");

    std::vector<double> s_nodes;
    std::vector<Eigen::Matrix2cd> ret, adv;
    for (std::size_t i = 0; i <= it; ++i) {
        if (times[i] < start - 1e-9) continue;
        s_nodes.push_back(times[i]);
        ret.push_back(kernel.block(it, i));
        adv.push_back(kernel.block(i, it));
    }
    return transform_from_rays(s_nodes, ret, adv, omega, t);
}

double equilibrium_onshell_solve(const std::function<cd(double)>& f,
                                 double guess, double half_width, double tol) {
    if (!(half_width > 0.0))
        throw ConfigError("equilibrium_onshell_solve: half_width must be > 0");
    double a = guess - half_width, b = guess + half_width;
    double fa = f(a).real(), fb = f(b).real();
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream msg;
        msg << "equilibrium_onshell_solve: no sign change on bracket; scan:";
        for (int i = 0; i <= 16; ++i) {
            const double x = a + (b - a) * i / 16.0;
            msg << " Re(" << x << ")=" << f(x).real();
        }
        throw NumericsError(msg.str());
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double x = (a * fb - b * fa) / (fb - fa);
        const double fx = f(x).real();
        if (std::abs(fx) <= tol || b - a <= 1e-15 * (1.0 + std::abs(x)))
            return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
            fb *= 0.5;  // Illinois damping keeps the bracket shrinking
        } else {
            b = x;
            fb = fx;
            fa *= 0.5;
        }
    }
    return 0.5 * (a + b);
}

OnShellResult new_renorm_step(const InteractionModel& model,
                              const ThermalSchedule& sched, int j, double t,
                              double t_mem, double omega_current,
                              const RenormOptions& opt) {
    if (j < 0 || j >= model.n_modes())
        throw ConfigError("new_renorm_step: mode index out of range");
    if (!(t_mem > 0.0) || !(opt.quad_step > 0.0) || opt.quad_step > t_mem)
        throw ConfigError("new_renorm_step: need 0 < quad_step <= t_mem");

    // Sample the two memory rays once; the root solve only re-phases them.
    const int count =
        static_cast<int>(std::ceil(t_mem / opt.quad_step - 1e-12));
    std::vector<double> s_nodes(static_cast<std::size_t>(count) + 1);
    std::vector<Eigen::Matrix2cd> ret(s_nodes.size()), adv(s_nodes.size());
    for (std::size_t k = 0; k < s_nodes.size(); ++k) {
        const double s =
            t - t_mem + t_mem * static_cast<double>(k) / count;
        s_nodes[k] = s;
        ret[k] = self_energy_second_order(model, sched, j, t, s);
        adv[k] = self_energy_second_order(model, sched, j, s, t);
    }

    // Retarded half-integral of the 12 component at a trial frequency.
    const auto retarded_12 = [&](double w) {
        cd acc(0.0, 0.0), prev(0.0, 0.0);
        for (std::size_t k = 0; k < s_nodes.size(); ++k) {
            const cd cur =
                ret[k](0, 1) * std::exp(cd(0.0, w * (t - s_nodes[k])));
            if (k > 0)
                acc += 0.5 * (s_nodes[k] - s_nodes[k - 1]) * (prev + cur);
            prev = cur;
        }
        return acc;
    };
    const auto rate_at = [&](double w) {
        return 2.0 * retarded_12(w).imag();  // bosonic sign convention
    };
    const auto transform_at = [&](double w) {
        return transform_from_rays(s_nodes, ret, adv, Schedule::constant(w),
                                   t);
    };

    OnShellResult res;
    res.mode = j;
    res.time = t;
    res.ndot = rate_at(omega_current);

    const double omega0 = model.omega0()[static_cast<std::size_t>(j)];
    double half = opt.bracket_half;
    if (!(half > 0.0))
        half = std::max(0.05, 10.0 * model.lambda() * model.lambda() *
                                  sum_weight2(model, j));
    const auto condition = [&](double w) {
        return cd(w - omega0 - transform_at(w)(0, 0).real(), 0.0);
    };
    try {
        res.omega =
            equilibrium_onshell_solve(condition, omega0, half, opt.root_tol);
    } catch (const NumericsError&) {
        res.omega = omega_current;
        res.omega_fallback = true;
    }
    res.transform = transform_at(res.omega);
    res.re_s11_residual =
        std::abs(res.omega - omega0 - res.transform(0, 0).real());
    res.stagger_residual = std::abs(rate_at(res.omega) - res.ndot);
    return res;
}

SpectralModel lorentzian_spectral_model(double center, double width,
                                        double beta, double lo, double hi,
                                        int points) {
    if (points < 3 || !(hi > lo) || !(width > 0.0))
        throw ConfigError("lorentzian_spectral_model: bad grid or width");
    std::vector<double> kappa(static_cast<std::size_t>(points));
    std::vector<double> rho(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        const double x =
            lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        kappa[i] = x;
        rho[i] = width / (M_PI * ((x - center) * (x - center) + width * width));
    }
    return normalized_model(std::move(kappa), std::move(rho), beta);
}

SpectralModel satellite_spectral_model(double center, double satellite,
                                       double weight, double width,
                                       double beta, double lo, double hi,
                                       int points) {
    if (points < 3 || !(hi > lo) || !(width > 0.0))
        throw ConfigError("satellite_spectral_model: bad grid or width");
    if (!(weight >= 0.0) || !(weight < 1.0))
        throw ConfigError("satellite_spectral_model: weight must be in [0,1)");
    std::vector<double> kappa(static_cast<std::size_t>(points));
    std::vector<double> rho(kappa.size());
    const double s2 = 2.0 * width * width;
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        const double x =
            lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        kappa[i] = x;
        rho[i] = (1.0 - weight) * std::exp(-(x - center) * (x - center) / s2) +
                 weight * std::exp(-(x - satellite) * (x - satellite) / s2);
    }
    return normalized_model(std::move(kappa), std::move(rho), beta);
}

InconsistencyReport diagonalization_inconsistency_demo(
    const SpectralModel& spectral, double gamma_probe, double bracket_half) {
    check_spectral(spectral);
    if (!(gamma_probe > 0.0))
        throw ConfigError("inconsistency demo: gamma_probe must be > 0");
    if (spectral.kappa.front() <= 0.0)
        throw ConfigError("inconsistency demo: kappa grid must be positive "
                          "(thermal occupation with mu = 0)");

    const auto occupation = [&](double k) {
        return 1.0 / std::expm1(spectral.beta * k);
    };

    InconsistencyReport rep;
    std::size_t peak = 0;
    for (std::size_t i = 1; i < spectral.kappa.size(); ++i) {
        if (spectral.rho[i] > spectral.rho[peak]) peak = i;
        rep.n_heisenberg +=
            0.5 * (spectral.kappa[i] - spectral.kappa[i - 1]) *
            (occupation(spectral.kappa[i]) * spectral.rho[i] +
             occupation(spectral.kappa[i - 1]) * spectral.rho[i - 1]);
    }

    // Dressed single-mode propagator from the spectral representation; the
    // on-shell frequency is the root of Re 1/g11 near the dominant peak.
    const auto g11 = [&](double k0) {
        cd acc(0.0, 0.0);
        for (std::size_t i = 1; i < spectral.kappa.size(); ++i) {
            const cd cur = spectral.rho[i] /
                           cd(k0 - spectral.kappa[i], gamma_probe);
            const cd prev = spectral.rho[i - 1] /
                            cd(k0 - spectral.kappa[i - 1], gamma_probe);
            acc += 0.5 * (spectral.kappa[i] - spectral.kappa[i - 1]) *
                   (cur + prev);
        }
        return acc;
    };
    rep.omega_onshell = equilibrium_onshell_solve(
        [&](double k0) { return 1.0 / g11(k0); }, spectral.kappa[peak],
        bracket_half);
    rep.n_at_omega = occupation(rep.omega_onshell);
    rep.gap = std::abs(rep.n_heisenberg - rep.n_at_omega);
    return rep;
}

}  // namespace tfd
