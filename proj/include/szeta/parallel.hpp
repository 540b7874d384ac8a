#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace szeta {

namespace detail {
inline std::atomic<unsigned>& thread_cap() {
    static std::atomic<unsigned> cap{0};
    return cap;
}
} // namespace detail

/// Upper bound on worker threads. 0 means machine parallelism.
inline void set_thread_count(unsigned n) { detail::thread_cap().store(n); }

inline unsigned thread_count() {
    unsigned cap = detail::thread_cap().load();
    if (cap == 0) cap = std::max(1u, std::thread::hardware_concurrency());
    return cap;
}

/// Runs body(i) for i in [0, n). Each index is handled by exactly one
/// thread; callers write into per-index slots so results never depend on
/// scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

/// Splits [0, n) into a fixed number of chunks (independent of the thread
/// count), maps each chunk to a partial value and reduces the partials in
/// chunk order. The result is bit-identical for any thread cap.
template <class T, class ChunkFn>
T chunked_sum(std::size_t n, ChunkFn&& chunk_fn, std::size_t chunks = 64) {
    chunks = std::max<std::size_t>(1, std::min(chunks, n));
    std::vector<T> partial(chunks, T{});
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t lo = n * c / chunks;
        const std::size_t hi = n * (c + 1) / chunks;
        partial[c] = chunk_fn(lo, hi);
    });
    T total{};
    for (const auto& p : partial) total += p;
    return total;
}

} // namespace szeta
