#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tricycle::harness {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Results must be
/// written by index; if any call throws, the exception of the lowest index is
/// rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn fn) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (n <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace tricycle::harness
