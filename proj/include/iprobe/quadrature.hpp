#ifndef IPROBE_QUADRATURE_HPP
#define IPROBE_QUADRATURE_HPP

#include "iprobe/profile.hpp"

namespace iprobe {

// L2 inner product (f,g)_l = int_0^l f(x) g(x) dx by composite trapezoid
// with n_quad+1 nodes.
double inner_product(const SpatialProfile& f, const SpatialProfile& g, double ell,
                     int n_quad);

// Composite trapezoid of a callable over [a, b] with n+1 nodes.
template <typename F>
double trapezoid(F&& f, double a, double b, int n) {
    const double h = (b - a) / static_cast<double>(n);
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i)
        acc += f(a + static_cast<double>(i) * h);
    return acc * h;
}

} // namespace iprobe

#endif
