#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace skewspec {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n). Work items must write to disjoint state;
// the first exception thrown by any item is rethrown on the caller.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min(threads, n);
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

// Variant passing (worker id, item index) so callers can keep per-worker
// scratch state (FFT plans, buffers) without sharing.
inline void parallel_for_workers(int n, int threads,
                                 const std::function<void(int, int)>& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(0, i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&](int id) {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(id, i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min(threads, n);
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

} // namespace skewspec
