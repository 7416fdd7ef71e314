#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace otto {

// Evaluates fn(i) for i in [0, count) on up to `workers` threads and returns
// the results in index order. The first exception thrown by any task is
// rethrown after all threads join.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
    using Result = decltype(fn(std::size_t{}));
    std::vector<Result> results(count);
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(workers, 1u), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace otto
