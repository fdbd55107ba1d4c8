#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace ffpc {

/// Number of worker threads used by sharded loops (at least 1).
inline unsigned worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(shard, begin, end) over [0, total) split into contiguous shards,
/// one per worker. Shard boundaries depend only on total and the worker count,
/// and callers merge exact results, so the outcome is order-independent.
inline void parallel_shards(std::uint64_t total,
                            const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body,
                            unsigned workers = worker_count()) {
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total)));
    if (workers == 1) {
        body(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = total * w / workers, end = total * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                body(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ffpc
