#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace omq {

namespace detail {
inline int& jobs_storage() {
    static int jobs = 1;
    return jobs;
}
}  // namespace detail

/// Worker count for intra-degree parallelism; 0 selects the hardware count.
inline void set_jobs(int k) {
    detail::jobs_storage() = k > 0 ? k : static_cast<int>(std::thread::hardware_concurrency());
}

inline int jobs() { return std::max(1, detail::jobs_storage()); }

/// Runs fn(i) for i in [0, count), possibly on several threads. The first
/// exception, if any, is rethrown on the calling thread.
inline void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    const int workers = static_cast<int>(std::min<size_t>(jobs(), count));
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex mu;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace omq
