#ifndef IPROBE_GRID_HPP
#define IPROBE_GRID_HPP

#include <stdexcept>

namespace iprobe {

// Space-time resolution: nx cells in space (dx = l/nx), nt steps in time
// (dt = T/nt). Node counts are nx+1 and nt+1.
struct Grid {
    int nx;
    int nt;

    Grid(int nx_, int nt_) : nx(nx_), nt(nt_) {
        if (nx < 8 || nt < 8)
            throw std::invalid_argument("Grid: nx and nt must be >= 8");
    }
};

} // namespace iprobe

#endif
