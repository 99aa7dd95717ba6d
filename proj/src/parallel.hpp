#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fbcs::detail {

// Runs fn(0), ..., fn(task_count - 1) across worker threads. Tasks must
// write to disjoint locations. The work split is by fixed task index, so
// results do not depend on the thread count or on scheduling.
inline void run_tasks(int task_count, const std::function<void(int)>& fn, int threads) {
    if (task_count <= 0) return;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, task_count);
    if (threads == 1) {
        for (int t = 0; t < task_count; ++t) fn(t);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= task_count) return;
                try {
                    fn(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace fbcs::detail
