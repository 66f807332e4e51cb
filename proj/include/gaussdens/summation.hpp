#pragma once

/**
 * @file summation.hpp
 * @brief Compensated accumulation and a deterministic block-parallel reduction.
 *
 * Work is split into fixed-size blocks whose boundaries depend only on the
 * problem size, never on the worker count. Each block is accumulated with
 * a compensated sum and the block results are combined in index order, so
 * a run with one worker and a run with eight produce identical bits.
 */

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace gaussdens {

/// Neumaier-style accumulator built on the TwoSum error-free transformation.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double v) : sum_(v) {}

    CompensatedSum& operator+=(double x) {
        const double t = sum_ + x;
        const double bp = t - sum_;
        comp_ += (sum_ - (t - bp)) + (x - bp);
        sum_ = t;
        return *this;
    }

    CompensatedSum& operator+=(const CompensatedSum& other) {
        *this += other.sum_;
        comp_ += other.comp_;
        return *this;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Worker count used when an option asks for "auto" (0).
unsigned default_workers();

/// Evaluates body(lo, hi) on consecutive blocks of [first, last] and returns
/// the per-block results in block order. Blocks may run concurrently.
template <class T, class Body>
std::vector<T> map_blocks(std::int64_t first, std::int64_t last, std::int64_t block_size, unsigned workers,
                          const Body& body) {
    if (last < first) return {};
    block_size = std::max<std::int64_t>(block_size, 1);
    const std::int64_t blocks = (last - first) / block_size + 1;
    std::vector<T> out(static_cast<std::size_t>(blocks));
    auto run_block = [&](std::int64_t b) {
        const std::int64_t lo = first + b * block_size;
        const std::int64_t hi = std::min(last, lo + block_size - 1);
        out[static_cast<std::size_t>(b)] = body(lo, hi);
    };

    if (workers == 0) workers = default_workers();
    const auto threads = static_cast<unsigned>(std::min<std::int64_t>(workers, blocks));
    if (threads <= 1) {
        for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
        return out;
    }
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::int64_t b = next++; b < blocks && !failed; b = next++) {
                try {
                    run_block(b);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

/// Calls body(begin, end) for consecutive blocks of [first, last] of at most
/// block_size indices, possibly concurrently, and returns the block sums
/// combined in block order.
CompensatedSum reduce_blocks(std::int64_t first, std::int64_t last, std::int64_t block_size, unsigned workers,
                             const std::function<CompensatedSum(std::int64_t, std::int64_t)>& body);

}  // namespace gaussdens
