#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace netvuln {

// Run fn(i) for i in [0, count) across hardware threads. Each index is
// processed exactly once; fn must be safe to call concurrently for
// distinct indices.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         unsigned max_threads = 0) {
    unsigned n_threads = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
    if (count <= 1 || n_threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(n_threads, count));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    workers.reserve(used);
    for (unsigned t = 0; t < used; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace netvuln
