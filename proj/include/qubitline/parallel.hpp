#pragma once

// Deterministic fork-join helper.  Worker count is capped by the
// QUBITLINE_THREADS environment variable (0 or unset = hardware auto).
// Results must be written to per-index slots so output never depends on
// completion order.

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qubitline {

inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QUBITLINE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return hw;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qubitline
