#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ldpc {

// Static range split over at most `jobs` threads.  Results must be written to
// per-index slots; the split never affects them.
template <typename Fn>
void parallel_for_chunks(int64_t n, int jobs, Fn&& fn) {
    jobs = std::max(1, jobs);
    if (n <= 0) return;
    if (jobs == 1 || n == 1) {
        fn(static_cast<int64_t>(0), n);
        return;
    }
    int workers = static_cast<int>(std::min<int64_t>(jobs, n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int64_t b = w * chunk, e = std::min<int64_t>(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& t : pool) t.join();
}

inline int default_jobs() {
    if (const char* env = std::getenv("LDPCTK_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace ldpc
