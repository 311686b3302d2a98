#include "tfd/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tfd/errors.hpp"

namespace tfd {

struct Schedule::Impl {
    virtual ~Impl() = default;
    virtual double value(double t) const = 0;
    virtual double derivative(double t) const = 0;
    virtual double antiderivative(double t) const = 0;
};

namespace {

struct ConstantImpl final : Schedule::Impl {
    double v;
    explicit ConstantImpl(double v_) : v(v_) {}
    double value(double) const override { return v; }
    double derivative(double) const override { return 0.0; }
    double antiderivative(double t) const override { return v * t; }
};

struct LinearImpl final : Schedule::Impl {
    double v0, slope;
    LinearImpl(double v0_, double slope_) : v0(v0_), slope(slope_) {}
    double value(double t) const override { return v0 + slope * t; }
    double derivative(double) const override { return slope; }
    double antiderivative(double t) const override {
        return v0 * t + 0.5 * slope * t * t;
    }
};

struct ExpApproachImpl final : Schedule::Impl {
    double v_inf, amp, rate;  // value = v_inf + amp * exp(-rate * t)
    ExpApproachImpl(double v_inf_, double v0, double rate_)
        : v_inf(v_inf_), amp(v0 - v_inf_), rate(rate_) {
        if (!(rate > 0.0))
            throw ConfigError("exp_approach rate must be positive");
    }
    double value(double t) const override {
        return v_inf + amp * std::exp(-rate * t);
    }
    double derivative(double t) const override {
        return -rate * amp * std::exp(-rate * t);
    }
    double antiderivative(double t) const override {
        return v_inf * t - amp / rate * std::exp(-rate * t);
    }
};

// C1 cubic Hermite interpolant; constant extrapolation beyond the nodes.
struct CubicHermiteImpl final : Schedule::Impl {
    std::vector<double> ts, vs, ds;
    std::vector<double> cum;  // integral of value() from ts.front() to ts[k]

    CubicHermiteImpl(std::vector<double> ts_, std::vector<double> vs_,
                     std::vector<double> ds_)
        : ts(std::move(ts_)), vs(std::move(vs_)), ds(std::move(ds_)) {
        if (ts.size() < 2 || ts.size() != vs.size() || ts.size() != ds.size())
            throw ConfigError("cubic_hermite needs >= 2 nodes with matching slopes");
        for (std::size_t k = 1; k < ts.size(); ++k)
            if (!(ts[k] > ts[k - 1]))
                throw ConfigError("cubic_hermite nodes must be strictly increasing");
        cum.assign(ts.size(), 0.0);
        for (std::size_t k = 1; k < ts.size(); ++k) {
            const double h = ts[k] - ts[k - 1];
            // Exact integral of one Hermite segment.
            cum[k] = cum[k - 1] + h * (0.5 * (vs[k - 1] + vs[k]) +
                                       h * (ds[k - 1] - ds[k]) / 12.0);
        }
    }

    // Index of the left node of the segment containing t, clamped inside.
    std::size_t segment(double t) const {
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const std::size_t k = static_cast<std::size_t>(it - ts.begin());
        return std::min(std::max<std::size_t>(k, 1), ts.size() - 1) - 1;
    }

    double value(double t) const override {
        if (t <= ts.front()) return vs.front();
        if (t >= ts.back()) return vs.back();
        const std::size_t k = segment(t);
        const double h = ts[k + 1] - ts[k];
        const double s = (t - ts[k]) / h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * vs[k] + (s3 - 2 * s2 + s) * h * ds[k] +
               (-2 * s3 + 3 * s2) * vs[k + 1] + (s3 - s2) * h * ds[k + 1];
    }

    double derivative(double t) const override {
        if (t <= ts.front() || t >= ts.back()) return 0.0;
        const std::size_t k = segment(t);
        const double h = ts[k + 1] - ts[k];
        const double s = (t - ts[k]) / h;
        const double s2 = s * s;
        return ((6 * s2 - 6 * s) * vs[k] + (3 * s2 - 4 * s + 1) * h * ds[k] +
                (-6 * s2 + 6 * s) * vs[k + 1] +
                (3 * s2 - 2 * s) * h * ds[k + 1]) / h;
    }

    double antiderivative(double t) const override {
        if (t <= ts.front()) return (t - ts.front()) * vs.front();
        if (t >= ts.back()) return cum.back() + (t - ts.back()) * vs.back();
        const std::size_t k = segment(t);
        const double h = ts[k + 1] - ts[k];
        const double s = (t - ts[k]) / h;
        const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
        const double part = (0.5 * s4 - s3 + s) * vs[k] +
                            (0.25 * s4 - 2.0 / 3.0 * s3 + 0.5 * s2) * h * ds[k] +
                            (-0.5 * s4 + s3) * vs[k + 1] +
                            (0.25 * s4 - s3 / 3.0) * h * ds[k + 1];
        return cum[k] + h * part;
    }
};

}  // namespace

Schedule::Schedule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

double Schedule::value(double t) const { return impl_->value(t); }
double Schedule::derivative(double t) const { return impl_->derivative(t); }
double Schedule::integral(double a, double b) const {
    return impl_->antiderivative(b) - impl_->antiderivative(a);
}

Schedule Schedule::constant(double v) {
    return Schedule(std::make_shared<ConstantImpl>(v));
}

Schedule Schedule::linear(double v0, double slope) {
    return Schedule(std::make_shared<LinearImpl>(v0, slope));
}

Schedule Schedule::exp_approach(double v_inf, double v0, double rate) {
    return Schedule(std::make_shared<ExpApproachImpl>(v_inf, v0, rate));
}

Schedule Schedule::cubic_hermite(std::vector<double> ts, std::vector<double> vs,
                                 std::vector<double> ds) {
    return Schedule(std::make_shared<CubicHermiteImpl>(
        std::move(ts), std::move(vs), std::move(ds)));
}

}  // namespace tfd
