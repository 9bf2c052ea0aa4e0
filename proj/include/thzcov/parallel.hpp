#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace thzcov {

// Runs f(i) for i in [0, n). Work items must write to disjoint slots so the
// result is identical for any worker count.
template <class F>
void parallel_for(long n, int workers, F&& f)
{
    if (workers <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<long> next{0};
    auto run = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    int nt = workers < static_cast<int>(n) ? workers : static_cast<int>(n);
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
}

} // namespace thzcov
