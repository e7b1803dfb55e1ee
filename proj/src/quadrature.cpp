#include "iprobe/quadrature.hpp"

#include <stdexcept>

namespace iprobe {

double inner_product(const SpatialProfile& f, const SpatialProfile& g, double ell,
                     int n_quad) {
    if (n_quad < 2)
        throw std::invalid_argument("inner_product: n_quad must be >= 2");
    return trapezoid([&](double x) { return f.value(x, ell) * g.value(x, ell); }, 0.0,
                     ell, n_quad);
}

} // namespace iprobe
