#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace scopenav {

// Static-partition parallel loop. Each index must write only its own output
// slot so results are independent of scheduling.
template <typename Fn>
void parallel_for(int n, int n_threads, Fn&& fn) {
    n_threads = std::max(1, n_threads);
    if (n_threads == 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    n_threads = std::min(n_threads, n);
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    const int chunk = (n + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        const int lo = t * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace scopenav
