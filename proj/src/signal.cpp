#include "iprobe/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace iprobe {

Signal::Signal(std::vector<double> samples, double dt, double t0)
    : samples_(std::move(samples)), dt_(dt), t0_(t0) {
    if (samples_.size() < 2)
        throw std::invalid_argument("Signal: need at least 2 samples");
    if (!(dt_ > 0.0))
        throw std::invalid_argument("Signal: dt must be positive");
    for (double v : samples_)
        if (!std::isfinite(v))
            throw std::invalid_argument("Signal: non-finite sample");
}

double Signal::value_at(double t) const {
    const std::size_t n = samples_.size();
    const double s = (t - t0_) / dt_;
    if (s < -1e-9 || s > static_cast<double>(n - 1) + 1e-9)
        throw std::invalid_argument("Signal::value_at: time " + std::to_string(t) +
                                    " outside span");
    if (n == 2) { // only linear possible
        const double w = std::clamp(s, 0.0, 1.0);
        return samples_[0] * (1.0 - w) + samples_[1] * w;
    }
    if (n == 3) { // quadratic through all three points
        const double u = std::clamp(s, 0.0, 2.0);
        const double w0 = 0.5 * (u - 1.0) * (u - 2.0);
        const double w1 = -u * (u - 2.0);
        const double w2 = 0.5 * u * (u - 1.0);
        return w0 * samples_[0] + w1 * samples_[1] + w2 * samples_[2];
    }
    // 4-point stencil i-1..i+2 around the cell containing t, clamped inward.
    long i = static_cast<long>(std::floor(s));
    i = std::clamp(i, 1L, static_cast<long>(n) - 3);
    const double u = s - static_cast<double>(i); // local coordinate, node i at u = 0
    const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return w0 * samples_[i - 1] + w1 * samples_[i] + w2 * samples_[i + 1] +
           w3 * samples_[i + 2];
}

Signal Signal::resample(const TimeGrid& grid) const {
    if (grid.n < 2 || !(grid.dt > 0.0))
        throw std::invalid_argument("Signal::resample: bad target grid");
    if (grid.n == samples_.size() && grid.dt == dt_ && grid.t0 == t0_)
        return *this; // node-aligned, keep samples bit-identical
    std::vector<double> out(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j)
        out[j] = value_at(grid.t0 + static_cast<double>(j) * grid.dt);
    return Signal(std::move(out), grid.dt, grid.t0);
}

double trapezoid_integral(const Signal& f) {
    const std::size_t n = f.size();
    double acc = 0.5 * (f[0] + f[n - 1]);
    for (std::size_t j = 1; j + 1 < n; ++j)
        acc += f[j];
    return acc * f.dt();
}

double trapezoid_integral_between(const Signal& f, double a, double b) {
    if (b < a)
        throw std::invalid_argument("trapezoid_integral_between: b < a");
    const double lo = f.t0();
    const double hi = f.end_time();
    const double eps = 1e-9 * std::max(1.0, std::abs(hi));
    if (a < lo - eps || b > hi + eps)
        throw std::invalid_argument("trapezoid_integral_between: [a,b] outside span");
    a = std::max(a, lo);
    b = std::min(b, hi);

    auto lerp = [&](double t) {
        const double s = (t - lo) / f.dt();
        std::size_t i = static_cast<std::size_t>(
            std::clamp(std::floor(s), 0.0, static_cast<double>(f.size() - 2)));
        const double u = s - static_cast<double>(i);
        return f[i] * (1.0 - u) + f[i + 1] * u;
    };

    // Indices of interior whole nodes in (a, b).
    const std::size_t first =
        static_cast<std::size_t>(std::ceil((a - lo) / f.dt() - 1e-12));
    const std::size_t last = static_cast<std::size_t>(
        std::floor((b - lo) / f.dt() + 1e-12));
    if (first > last) // both endpoints inside one cell
        return 0.5 * (lerp(a) + lerp(b)) * (b - a);

    double acc = 0.0;
    const double ta = f.time(first);
    const double tb = f.time(last);
    if (ta > a)
        acc += 0.5 * (lerp(a) + f[first]) * (ta - a);
    for (std::size_t j = first; j < last; ++j)
        acc += 0.5 * (f[j] + f[j + 1]) * f.dt();
    if (b > tb)
        acc += 0.5 * (f[last] + lerp(b)) * (b - tb);
    return acc;
}

} // namespace iprobe
