#include "iprobe/field.hpp"

#include <stdexcept>

namespace iprobe {

SpaceTimeField::SpaceTimeField(double ell, double T, int nx, int nt)
    : ell_(ell), T_(T), nx_(nx), nt_(nt),
      values_(static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(nt + 1), 0.0) {
    if (!(ell > 0.0) || !(T > 0.0) || nx < 2 || nt < 1)
        throw std::invalid_argument("SpaceTimeField: bad dimensions");
}

Signal boundary_flux_left(const SpaceTimeField& f) {
    if (f.nx() < 3)
        throw std::invalid_argument("boundary_flux_left: need nx >= 3");
    const double inv = 1.0 / (2.0 * f.dx());
    std::vector<double> flux(static_cast<std::size_t>(f.nt()) + 1);
    for (int j = 0; j <= f.nt(); ++j)
        flux[j] = (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) * inv;
    return Signal(std::move(flux), f.dt(), 0.0);
}

Signal boundary_flux_right(const SpaceTimeField& f) {
    if (f.nx() < 3)
        throw std::invalid_argument("boundary_flux_right: need nx >= 3");
    const int n = f.nx();
    const double inv = 1.0 / (2.0 * f.dx());
    std::vector<double> flux(static_cast<std::size_t>(f.nt()) + 1);
    for (int j = 0; j <= f.nt(); ++j)
        flux[j] = (3.0 * f(n, j) - 4.0 * f(n - 1, j) + f(n - 2, j)) * inv;
    return Signal(std::move(flux), f.dt(), 0.0);
}

} // namespace iprobe
