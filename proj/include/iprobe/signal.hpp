#ifndef IPROBE_SIGNAL_HPP
#define IPROBE_SIGNAL_HPP

#include <cstddef>
#include <vector>

namespace iprobe {

// Uniform time grid descriptor: n samples at t0 + j*dt, j = 0..n-1.
struct TimeGrid {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t n = 0;
};

// Uniformly sampled time series. The time of sample j is always recomputed
// as t0 + j*dt; it is never accumulated, so sample times are bit-stable.
class Signal {
  public:
    Signal(std::vector<double> samples, double dt, double t0 = 0.0);

    std::size_t size() const { return samples_.size(); }
    double dt() const { return dt_; }
    double t0() const { return t0_; }
    double time(std::size_t j) const { return t0_ + static_cast<double>(j) * dt_; }
    double end_time() const { return time(samples_.size() - 1); }
    double operator[](std::size_t j) const { return samples_[j]; }
    const std::vector<double>& samples() const { return samples_; }

    // Piecewise-cubic (4-point Lagrange) interpolation at an arbitrary time
    // inside the span; stencils shift to one-sided at the ends.
    double value_at(double t) const;

    // Resample onto a new uniform grid by cubic interpolation. A grid that
    // matches this signal's nodes exactly returns the samples unchanged.
    Signal resample(const TimeGrid& grid) const;

  private:
    std::vector<double> samples_;
    double dt_;
    double t0_;
};

// Composite trapezoid rule over the signal's whole span.
double trapezoid_integral(const Signal& f);

// Trapezoid integral of the signal restricted to [a, b]; partial cells at the
// ends use linear interpolation. Requires [a, b] inside the signal's span.
double trapezoid_integral_between(const Signal& f, double a, double b);

} // namespace iprobe

#endif
