// sweep.hpp — deterministic parallel evaluation of independent tasks
//
// Results land in index order no matter how many worker threads run, so any
// sweep built on parallel_map is byte-identical to its serial execution.

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <type_traits>
#include <vector>

namespace hof {

inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs != 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Evaluate fn(0), …, fn(count−1) on up to `jobs` threads (0 = all cores).
// The first thrown exception (lowest task index) is rethrown to the caller.
template <typename F>
auto parallel_map(std::size_t count, unsigned jobs, F&& fn)
    -> std::vector<std::decay_t<decltype(fn(std::size_t{0}))>> {
    using R = std::decay_t<decltype(fn(std::size_t{0}))>;
    std::vector<R> results(count);
    if (count == 0) return results;

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_jobs(jobs), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    results[i] = fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
    }
    return results;
}

}  // namespace hof
