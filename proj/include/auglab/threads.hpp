#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "auglab/common.hpp"

namespace auglab {

// Thread cap: AUGLAB_THREADS env var, else hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("AUGLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// The index range is always split into the same fixed number of chunks, so
// every chunk sees the same [lo, hi) no matter how many workers run. Per-slot
// writes and per-chunk reductions are therefore bit-identical across thread
// counts.
constexpr int kChunks = 64;

namespace detail {
inline void run_chunks(size_t n, const std::function<void(int, size_t, size_t)>& chunk_body) {
    if (n == 0) return;
    const size_t chunk = (n + kChunks - 1) / kChunks;
    const int live = static_cast<int>((n + chunk - 1) / chunk);
    const int workers = std::min(thread_count(), live);
    if (workers <= 1 || n < 4096) {
        for (int c = 0; c < live; ++c) {
            const size_t lo = static_cast<size_t>(c) * chunk;
            chunk_body(c, lo, std::min(n, lo + chunk));
        }
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int c = next.fetch_add(1);
                if (c >= live) return;
                const size_t lo = static_cast<size_t>(c) * chunk;
                chunk_body(c, lo, std::min(n, lo + chunk));
            }
        });
    }
    for (auto& t : pool) t.join();
}
}  // namespace detail

inline void parallel_for(size_t n, const std::function<void(size_t, size_t)>& body) {
    detail::run_chunks(n, [&](int, size_t lo, size_t hi) { body(lo, hi); });
}

// Deterministic reduction: per-chunk partial sums combined in chunk order.
// chunk_sum must itself accumulate in index order within [lo, hi).
inline double parallel_sum(size_t n, const std::function<double(size_t, size_t)>& chunk_sum) {
    std::vector<double> partial(kChunks, 0.0);
    detail::run_chunks(n, [&](int c, size_t lo, size_t hi) { partial[c] = chunk_sum(lo, hi); });
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

}  // namespace auglab
