#pragma once

#include <memory>
#include <vector>

namespace tfd {

// Scalar control profile with closed-form derivative and definite integral.
//
// Profiles drive the time-dependent generator coefficients, so all three
// accessors must be mutually consistent to high accuracy: value() is the
// profile itself, derivative() its exact time derivative, and
// integral(a, b) the exact definite integral of value() over [a, b].
// Analytic factories provide these in closed form; the cubic Hermite
// variant integrates its polynomial segments exactly.
class Schedule {
public:
    double value(double t) const;
    double derivative(double t) const;
    double integral(double a, double b) const;

    static Schedule constant(double v);
    static Schedule linear(double v0, double slope);
    // v_inf + (v0 - v_inf) * exp(-rate * t), with t measured from 0.
    static Schedule exp_approach(double v_inf, double v0, double rate);
    // C1 piecewise cubic through (t_k, v_k) with prescribed slopes d_k.
    // Outside [t_front, t_back] the profile is held constant at the end
    // values (zero slope), so late lookups during predictor steps stay safe.
    static Schedule cubic_hermite(std::vector<double> ts,
                                  std::vector<double> vs,
                                  std::vector<double> ds);

    struct Impl;

private:
    explicit Schedule(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

// Per-mode thermal control: energy, target occupation, and the diagnostic
// rate gamma (default 0; nonzero values intentionally break probability
// conservation, which is what the gamma-necessity tests demonstrate).
struct ModeSchedule {
    Schedule omega = Schedule::constant(0.0);
    Schedule occupation = Schedule::constant(0.0);
    Schedule gamma = Schedule::constant(0.0);
};

using ThermalSchedule = std::vector<ModeSchedule>;

}  // namespace tfd
