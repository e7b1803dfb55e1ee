#include "iprobe/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace iprobe {

SpatialProfile SpatialProfile::zero() {
    return SpatialProfile();
}

SpatialProfile SpatialProfile::constant(double c) {
    SpatialProfile p;
    p.kind_ = Kind::constant;
    p.a_ = c;
    return p;
}

SpatialProfile SpatialProfile::linear(double slope) {
    SpatialProfile p;
    p.kind_ = Kind::linear;
    p.a_ = slope;
    return p;
}

SpatialProfile SpatialProfile::quad_bump(double amp, double c) {
    SpatialProfile p;
    p.kind_ = Kind::quad_bump;
    p.a_ = amp;
    p.b_ = c;
    return p;
}

SpatialProfile SpatialProfile::sine_mode(double amp, int k) {
    if (k < 1)
        throw std::invalid_argument("SpatialProfile::sine_mode: k must be >= 1");
    SpatialProfile p;
    p.kind_ = Kind::sine_mode;
    p.a_ = amp;
    p.k_ = k;
    return p;
}

SpatialProfile SpatialProfile::sine_abs(double amp, double omega) {
    SpatialProfile p;
    p.kind_ = Kind::sine_abs;
    p.a_ = amp;
    p.b_ = omega;
    return p;
}

SpatialProfile SpatialProfile::sampled(std::vector<double> values, double domain_length) {
    if (values.size() < 3)
        throw std::invalid_argument("SpatialProfile::sampled: need at least 3 values");
    if (!(domain_length > 0.0))
        throw std::invalid_argument("SpatialProfile::sampled: bad domain length");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("SpatialProfile::sampled: non-finite value");
    SpatialProfile p;
    p.kind_ = Kind::sampled;
    p.b_ = domain_length;
    p.values_ = std::move(values);
    return p;
}

SpatialProfile SpatialProfile::reflected(SpatialProfile inner, double mid, double scale) {
    if (!(mid > 0.0))
        throw std::invalid_argument("SpatialProfile::reflected: mid must be positive");
    SpatialProfile p;
    p.kind_ = Kind::reflected;
    p.b_ = mid;
    p.c_ = scale;
    p.inner_ = std::make_shared<const SpatialProfile>(std::move(inner));
    return p;
}

bool SpatialProfile::is_closed_form() const {
    return kind_ != Kind::sampled && kind_ != Kind::reflected;
}

double SpatialProfile::value(double x, double ell) const {
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::constant:
        return a_;
    case Kind::linear:
        return a_ * x;
    case Kind::quad_bump:
        return a_ * x * (b_ - x);
    case Kind::sine_mode:
        return a_ * std::sin(static_cast<double>(k_) * M_PI * x / ell);
    case Kind::sine_abs:
        return a_ * std::sin(b_ * x);
    case Kind::sampled: {
        const double dom = b_;
        if (x < -1e-12 * dom || x > dom * (1.0 + 1e-12))
            throw std::invalid_argument("SpatialProfile: x outside sampled domain");
        const double dx = dom / static_cast<double>(values_.size() - 1);
        double s = x / dx;
        if (s < 0.0) s = 0.0;
        const double smax = static_cast<double>(values_.size() - 1);
        if (s > smax) s = smax;
        std::size_t i = static_cast<std::size_t>(s);
        if (i >= values_.size() - 1) i = values_.size() - 2;
        const double u = s - static_cast<double>(i);
        return values_[i] * (1.0 - u) + values_[i + 1] * u;
    }
    case Kind::reflected:
        if (x <= b_)
            return inner_->value(x, b_);
        return c_ * inner_->value(2.0 * b_ - x, b_);
    }
    return 0.0;
}

double SpatialProfile::deriv(double x, double ell) const {
    switch (kind_) {
    case Kind::zero:
    case Kind::constant:
        return 0.0;
    case Kind::linear:
        return a_;
    case Kind::quad_bump:
        return a_ * (b_ - 2.0 * x);
    case Kind::sine_mode: {
        const double w = static_cast<double>(k_) * M_PI / ell;
        return a_ * w * std::cos(w * x);
    }
    case Kind::sine_abs:
        return a_ * b_ * std::cos(b_ * x);
    default:
        throw std::invalid_argument("SpatialProfile::deriv: no derivative for this kind");
    }
}

double SpatialProfile::deriv2(double x, double ell) const {
    switch (kind_) {
    case Kind::zero:
    case Kind::constant:
    case Kind::linear:
        return 0.0;
    case Kind::quad_bump:
        return -2.0 * a_;
    case Kind::sine_mode: {
        const double w = static_cast<double>(k_) * M_PI / ell;
        return -a_ * w * w * std::sin(w * x);
    }
    case Kind::sine_abs:
        return -a_ * b_ * b_ * std::sin(b_ * x);
    default:
        throw std::invalid_argument("SpatialProfile::deriv2: no derivative for this kind");
    }
}

} // namespace iprobe
