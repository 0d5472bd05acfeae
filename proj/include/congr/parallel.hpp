#ifndef CONGR_PARALLEL_HPP
#define CONGR_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace congr {

// Worker count: CONGR_THREADS env, else hardware_concurrency.
inline unsigned thread_count() {
    if (const char* env = std::getenv("CONGR_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

// Runs fn(lo, hi) over [0, n) split into fixed-size blocks. The block layout is
// independent of the thread count, so any output written per-index or per-block
// is identical for every scheduling.
inline void parallel_for_blocks(long n, const std::function<void(long, long)>& fn, long block = 256) {
    if (n <= 0) return;
    unsigned workers = thread_count();
    long nblocks = (n + block - 1) / block;
    if (workers <= 1 || nblocks <= 1) {
        fn(0, n);
        return;
    }
    std::atomic<long> next{0};
    auto run = [&] {
        while (true) {
            long b = next.fetch_add(1);
            if (b >= nblocks) break;
            long lo = b * block;
            long hi = std::min(n, lo + block);
            fn(lo, hi);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

}  // namespace congr

#endif
