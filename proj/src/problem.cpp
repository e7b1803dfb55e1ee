#include "iprobe/problem.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace iprobe {

BoundaryInput BoundaryInput::zero() {
    return BoundaryInput();
}

BoundaryInput BoundaryInput::constant(double c) {
    BoundaryInput e;
    e.kind_ = Kind::constant;
    e.a_ = c;
    return e;
}

BoundaryInput BoundaryInput::sine(double amp, double omega) {
    BoundaryInput e;
    e.kind_ = Kind::sine;
    e.a_ = amp;
    e.b_ = omega;
    return e;
}

BoundaryInput BoundaryInput::sin_cubed(double amp) {
    BoundaryInput e;
    e.kind_ = Kind::sin_cubed;
    e.a_ = amp;
    return e;
}

BoundaryInput BoundaryInput::ramp_quad(double a, double b) {
    BoundaryInput e;
    e.kind_ = Kind::ramp_quad;
    e.a_ = a;
    e.b_ = b;
    return e;
}

BoundaryInput BoundaryInput::sampled(Signal s) {
    BoundaryInput e;
    e.kind_ = Kind::sampled;
    e.samples_ = std::make_shared<const Signal>(std::move(s));
    return e;
}

double BoundaryInput::value(double t) const {
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::constant:
        return a_;
    case Kind::sine:
        return a_ * std::sin(b_ * t);
    case Kind::sin_cubed: {
        const double s = std::sin(t);
        return a_ * s * s * s;
    }
    case Kind::ramp_quad:
        return a_ * t * (b_ + t);
    case Kind::sampled: {
        const Signal& s = *samples_;
        // Linear interpolation; clamp to the last sample past the end.
        if (t <= s.t0())
            return s[0];
        if (t >= s.end_time())
            return s[s.size() - 1];
        const double u = (t - s.t0()) / s.dt();
        const std::size_t i = static_cast<std::size_t>(u);
        const double w = u - static_cast<double>(i);
        return s[i] * (1.0 - w) + s[i + 1] * w;
    }
    }
    return 0.0;
}

HeatProblem::HeatProblem(double ell_, double T_, BoundaryInput eta_, SpatialProfile u0_)
    : ell(ell_), T(T_), eta(std::move(eta_)), u0(std::move(u0_)) {
    if (!(ell > 0.0))
        throw std::invalid_argument("HeatProblem: ell must be positive");
    if (!(T > 0.0))
        throw std::invalid_argument("HeatProblem: T must be positive");
    if (u0.kind() == SpatialProfile::Kind::sampled) {
        // Sampled data must be Dirichlet-compatible at the fixed end.
        const double end = u0.value(ell, ell);
        if (std::abs(end) > 1e-9)
            throw std::invalid_argument("HeatProblem: sampled u0 must vanish at x = ell");
    }
}

WaveProblem::WaveProblem(double ell_, double T_, BoundaryInput eta_, SpatialProfile u0_,
                         SpatialProfile u1_, bool warnings)
    : ell(ell_), T(T_), eta(std::move(eta_)), u0(std::move(u0_)), u1(std::move(u1_)) {
    if (!(ell > 0.0))
        throw std::invalid_argument("WaveProblem: ell must be positive");
    if (!(T > 0.0))
        throw std::invalid_argument("WaveProblem: T must be positive");
    if (warnings) {
        if (T <= ell)
            std::fprintf(stderr,
                         "warning: wave horizon T=%g does not exceed ell=%g; "
                         "observation cannot see the whole interval\n",
                         T, ell);
        const double mismatch = std::abs(eta.value(0.0) - u0.value(0.0, ell));
        if (mismatch > 1e-9)
            std::fprintf(stderr,
                         "warning: eta(0) and u0(0) differ by %g; corner "
                         "incompatibility will radiate from x = 0\n",
                         mismatch);
    }
}

} // namespace iprobe
