#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace tcw {

/// Runs fn(i) for i in [0, count) across `workers` threads.  Work items are
/// claimed dynamically; callers make results order-independent by writing to
/// per-index slots, so the schedule never affects the output.
template <typename F>
void parallel_for(std::size_t count, unsigned workers, F&& fn) {
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
}

}  // namespace tcw
