#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tomolab {

// Thread count used by parallel_for. Honors the TOMOLAB_THREADS env var.
inline int thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("TOMOLAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

// Runs fn(i) for i in [0, count). Each index writes only its own outputs, so
// results are bit-identical for any thread count.
template <typename Fn>
void parallel_for(long count, Fn&& fn) {
    int nt = thread_count();
    if (nt <= 1 || count < 2 * nt) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    long chunk = (count + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        long lo = t * chunk;
        long hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tomolab
