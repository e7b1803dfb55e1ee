#ifndef IPROBE_FIELD_HPP
#define IPROBE_FIELD_HPP

#include "iprobe/signal.hpp"

#include <cstddef>
#include <vector>

namespace iprobe {

// Discrete solution u(x_i, t_j) on [0,l] x [0,T]; (nx+1) x (nt+1) values.
// Row 0 carries the Dirichlet input at x = 0, row nx is the fixed end.
// Storage is time-slice contiguous: index (i, j) -> j*(nx+1) + i.
class SpaceTimeField {
  public:
    SpaceTimeField(double ell, double T, int nx, int nt);

    double ell() const { return ell_; }
    double T() const { return T_; }
    int nx() const { return nx_; }
    int nt() const { return nt_; }
    double dx() const { return ell_ / static_cast<double>(nx_); }
    double dt() const { return T_ / static_cast<double>(nt_); }
    double x(int i) const { return static_cast<double>(i) * dx(); }
    double t(int j) const { return static_cast<double>(j) * dt(); }

    double operator()(int i, int j) const {
        return values_[static_cast<std::size_t>(j) * (nx_ + 1) + i];
    }
    double& operator()(int i, int j) {
        return values_[static_cast<std::size_t>(j) * (nx_ + 1) + i];
    }

  private:
    double ell_;
    double T_;
    int nx_;
    int nt_;
    std::vector<double> values_;
};

// Flux u_x(0, t_j) by the one-sided second-order difference
// (-3 u_0 + 4 u_1 - u_2) / (2 dx). Exact for fields quadratic in x.
Signal boundary_flux_left(const SpaceTimeField& f);

// Flux u_x(l, t_j) by the mirrored one-sided difference
// (3 u_nx - 4 u_{nx-1} + u_{nx-2}) / (2 dx).
Signal boundary_flux_right(const SpaceTimeField& f);

} // namespace iprobe

#endif
