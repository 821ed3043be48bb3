#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace tfch {

namespace detail {
inline int& thread_count_ref() {
    static int n = 1;
    return n;
}
}  // namespace detail

/// Grid-level parallelism degree. Default 1 (bit-exact reproducibility);
/// output is deterministic for any fixed count.
inline void set_thread_count(int n) { detail::thread_count_ref() = n < 1 ? 1 : n; }
inline int thread_count() { return detail::thread_count_ref(); }

/// Chunked parallel loop over [0, n). Partitioning depends only on n and the
/// configured thread count, so per-chunk reductions stay deterministic.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    const int nt = thread_count();
    if (nt == 1 || n < 4096) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t chunk = (n + nt - 1) / nt;
    std::vector<std::thread> workers;
    workers.reserve(nt - 1);
    for (int t = 1; t < nt; ++t) {
        const std::size_t lo = chunk * t;
        if (lo >= n) break;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        workers.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    body(std::size_t{0}, chunk < n ? chunk : n);
    for (auto& w : workers) w.join();
}

}  // namespace tfch
