#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace eihlab {

/// Paths per work unit. Fixed so that partial results, and therefore the
/// order-dependent floating-point totals, do not depend on the worker count.
inline constexpr std::size_t kBlockSize = 4096;

/// Splits [0, n) into fixed blocks, evaluates fn(begin, end) for each block on
/// up to `workers` threads, and returns the partial results in block order.
template <typename Fn>
auto run_blocks(std::size_t n, std::size_t workers, Fn fn) -> std::vector<decltype(fn(std::size_t{}, std::size_t{}))> {
    using Partial = decltype(fn(std::size_t{}, std::size_t{}));
    const std::size_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<Partial> partials(n_blocks);
    auto work = [&](std::size_t b) {
        const std::size_t begin = b * kBlockSize;
        partials[b] = fn(begin, std::min(n, begin + kBlockSize));
    };

    workers = std::max<std::size_t>(1, std::min(workers, n_blocks));
    if (workers == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) work(b);
        return partials;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
                try {
                    work(b);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    return partials;
}

} // namespace eihlab
