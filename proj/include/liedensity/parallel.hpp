#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace liedensity {

struct EnumerationOptions {
    /// 0 selects hardware concurrency.
    unsigned workers = 0;
    std::uint64_t budget_points = 100'000'000;

    unsigned resolved_workers() const {
        if (workers != 0) return workers;
        return std::max(1u, std::thread::hardware_concurrency());
    }
};

/// Sums slice_count(i) for i in [0, slices). Slice i goes to worker
/// i mod workers; each worker owns its counter, so the result does not
/// depend on the worker count.
template <typename SliceFn>
std::uint64_t parallel_slice_sum(std::uint64_t slices, unsigned workers, SliceFn&& slice_count) {
    workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(slices, 1)));
    if (workers == 1) {
        std::uint64_t total = 0;
        for (std::uint64_t i = 0; i < slices; ++i) total += slice_count(i);
        return total;
    }
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    for (std::uint64_t i = w; i < slices; i += workers) partial[w] += slice_count(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::uint64_t total = 0;
    for (auto c : partial) total += c;
    return total;
}

} // namespace liedensity
