#ifndef IPROBE_PROFILE_HPP
#define IPROBE_PROFILE_HPP

#include <memory>
#include <vector>

namespace iprobe {

// Spatial data u0(x) or u1(x). Closed-form kinds are carried symbolically so
// that re-evaluating under a different interval length never interpolates;
// sampled profiles are linearly interpolated on their own fixed domain.
//
// Closed forms (l is the interval length supplied at evaluation time):
//   zero                 0
//   constant             c
//   linear               a*x
//   quad_bump            a*x*(c - x)
//   sine_mode            a*sin(k*pi*x/l)      (scales with l)
//   sine_abs             a*sin(omega*x)       (fixed in space)
//   reflected            inner(x) on [0,m], scale*inner(2m - x) on (m,2m]
class SpatialProfile {
  public:
    enum class Kind { zero, constant, linear, quad_bump, sine_mode, sine_abs, sampled, reflected };

    static SpatialProfile zero();
    static SpatialProfile constant(double c);
    static SpatialProfile linear(double slope);
    static SpatialProfile quad_bump(double amp, double c);
    static SpatialProfile sine_mode(double amp, int k);
    static SpatialProfile sine_abs(double amp, double omega);
    static SpatialProfile sampled(std::vector<double> values, double domain_length);
    // Extends `inner` from [0, mid] to [0, 2*mid] by inner(2*mid - x) times
    // `scale`; scale = -1 is the antisymmetric (odd) reflection.
    static SpatialProfile reflected(SpatialProfile inner, double mid, double scale);

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::zero; }
    bool is_closed_form() const;

    // Parameter access for the kinds where series expansions have exact
    // coefficients.
    double amplitude() const { return a_; }  // a for sine_mode / sine_abs
    double omega() const { return b_; }      // sine_abs frequency
    int mode_number() const { return k_; }   // sine_mode index

    double value(double x, double ell) const;
    // Derivatives are available for closed forms only.
    double deriv(double x, double ell) const;
    double deriv2(double x, double ell) const;

  private:
    SpatialProfile() = default;
    Kind kind_ = Kind::zero;
    double a_ = 0.0; // amplitude / constant / slope
    double b_ = 0.0; // second parameter (c, omega, domain length, reflection mid)
    double c_ = 0.0; // reflection scale
    int k_ = 0;      // mode number
    std::vector<double> values_;
    std::shared_ptr<const SpatialProfile> inner_;
};

} // namespace iprobe

#endif
