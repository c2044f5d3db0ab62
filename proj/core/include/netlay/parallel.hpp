#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace netlay {

inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs f(i) for i in [0, n). Splits the range statically across threads when n
// is large enough to amortize thread startup. f(i) must only write state owned
// by index i, which keeps results independent of the worker count.
template <class F>
void parallel_for(std::size_t n, F&& f, std::size_t grain = 512) {
    unsigned workers = worker_count();
    if (n < grain || workers < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    unsigned parts = std::min<std::size_t>(workers, n);
    std::vector<std::thread> threads;
    threads.reserve(parts);
    std::size_t chunk = (n + parts - 1) / parts;
    for (unsigned t = 0; t < parts; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&f, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& th : threads) th.join();
}

} // namespace netlay
