#ifndef IPROBE_PARALLEL_HPP
#define IPROBE_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace iprobe {

// Number of worker threads: INTERVAL_PROBE_THREADS (clamped to >= 1) when
// set, otherwise the hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n) across worker threads in contiguous blocks.
// Callers must write results by index only; with that discipline the output
// is identical for any thread count. The first exception caught on any
// worker is rethrown on the calling thread after all workers join (which one
// is "first" is only deterministic when a single index throws).
template <typename F>
void parallel_for(int n, F&& body) {
    if (n <= 0)
        return;
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const int begin = static_cast<int>(static_cast<long long>(w) * n / workers);
        const int end = static_cast<int>(static_cast<long long>(w + 1) * n / workers);
        pool.emplace_back([&body, &first_error, &error_mutex, begin, end] {
            try {
                for (int i = begin; i < end; ++i)
                    body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace iprobe

#endif
