#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace wnrank {

/// Resolves a worker count: explicit request > 0 wins, then the WN_THREADS
/// environment variable, then hardware concurrency (at least 1).
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WN_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(begin, end, worker_index) over [0, count) split into contiguous
/// chunks, one per worker. Static chunking keeps every item's work
/// independent of the worker count; the first thrown exception is rethrown.
template <typename Fn>
void parallel_for(std::int64_t count, int threads, Fn&& fn) {
    if (count <= 0) return;
    const int workers =
        static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(threads, count)));
    if (workers == 1) {
        fn(std::int64_t{0}, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, w, begin, end]() {
            try {
                if (begin < end) fn(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace wnrank
