#include "iprobe/parallel.hpp"

#include <cstdlib>

namespace iprobe {

int worker_count() {
    if (const char* env = std::getenv("INTERVAL_PROBE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace iprobe
