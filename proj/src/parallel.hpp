#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crn {

// Worker count: CRNINJECT_THREADS if set and positive, else the hardware count.
inline unsigned worker_count() {
    if (const char* env = std::getenv("CRNINJECT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count). Results must be written to per-index
// slots so the outcome does not depend on scheduling. The first exception
// thrown by any task is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    unsigned workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace crn
