#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qcc {

// Worker cap: QCC_THREADS when set, hardware concurrency otherwise.
inline int worker_count() {
    if (const char* env = std::getenv("QCC_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, count) on up to worker_count() threads. Each index
// is independent and writes only its own slot, so results are deterministic
// regardless of scheduling; callers assemble them in index order.
template <typename Fn>
void parallel_for_index(int count, Fn&& fn, int max_threads = 0) {
    const int workers = std::min(count, max_threads > 0 ? max_threads : worker_count());
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace qcc
