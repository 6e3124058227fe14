#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace galign {

inline int resolve_workers(int workers) {
    if (workers > 0)
        return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, count) across a fixed pool. Results must be
/// written to preallocated per-index slots so the output is independent of
/// the worker count. The first exception is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    const int nw = resolve_workers(workers);
    if (nw <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    const int spawn = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nw), count));
    threads.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t)
        threads.emplace_back(worker);
    for (auto& t : threads)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace galign
