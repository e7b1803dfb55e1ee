#ifndef IPROBE_PROBLEM_HPP
#define IPROBE_PROBLEM_HPP

#include "iprobe/profile.hpp"
#include "iprobe/signal.hpp"

#include <memory>

namespace iprobe {

// Dirichlet input eta(t) at x = 0. Closed forms are preferred (the presets
// use them); a sampled signal is linearly interpolated.
class BoundaryInput {
  public:
    enum class Kind { zero, constant, sine, sin_cubed, ramp_quad, sampled };

    static BoundaryInput zero();
    static BoundaryInput constant(double c);
    static BoundaryInput sine(double amp, double omega);    // amp*sin(omega*t)
    static BoundaryInput sin_cubed(double amp);             // amp*sin(t)^3
    static BoundaryInput ramp_quad(double a, double b);     // a*t*(b + t)
    static BoundaryInput sampled(Signal s);

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::zero; }
    double value(double t) const;

  private:
    BoundaryInput() = default;
    Kind kind_ = Kind::zero;
    double a_ = 0.0;
    double b_ = 0.0;
    std::shared_ptr<const Signal> samples_;
};

// u_t - u_xx = 0 on (0,l) x (0,T), u(0,t) = eta(t), u(l,t) = 0, u(x,0) = u0.
struct HeatProblem {
    double ell;
    double T;
    BoundaryInput eta;
    SpatialProfile u0;

    HeatProblem(double ell, double T, BoundaryInput eta, SpatialProfile u0);
};

// u_tt - u_xx = 0 on (0,l) x (0,T), u(0,t) = eta(t), u(l,t) = 0,
// u(x,0) = u0, u_t(x,0) = u1. T > l is the observability regime; shorter
// horizons (and l >= T) still solve fine, so the constructor only warns.
struct WaveProblem {
    double ell;
    double T;
    BoundaryInput eta;
    SpatialProfile u0;
    SpatialProfile u1;

    WaveProblem(double ell, double T, BoundaryInput eta, SpatialProfile u0,
                SpatialProfile u1, bool warnings = true);
};

} // namespace iprobe

#endif
