#pragma once

#include "dioph/exact_real.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dioph {

/// The annulus l < ||q|| <= u.
struct Window {
    BigInt l;
    BigInt u;

    /// Throws InvalidWindow unless 0 <= l < u.
    void validate() const;
    std::string to_string() const { return "(" + l.get_str() + "," + u.get_str() + "]"; }
};

enum class SamplingMode { MonteCarlo, Grid };

struct SamplingOptions {
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    SamplingMode mode = SamplingMode::MonteCarlo;
    unsigned threads = 0;  // 0: DIOPH_THREADS or hardware concurrency
    /// Batch of sample indices [first, first + count); count 0 means up to `samples`.
    /// Splitting a run into batches never changes any individual sample.
    std::uint64_t first = 0;
    std::uint64_t count = 0;

    std::uint64_t batch() const { return count != 0 ? count : samples - std::min(first, samples); }
};

std::uint64_t splitmix64(std::uint64_t x);

/// Worker count: requested if nonzero, else DIOPH_THREADS, else hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Sample `index` as a point of [0,1)^m. Monte Carlo coordinates are k/2^53
/// drawn from a substream of (seed, index, coordinate); grid points are cell
/// midpoints of a k^m grid with k^m >= samples.
std::vector<BigRational> sample_point(const SamplingOptions& opts, std::uint64_t index, std::size_t m);

/// Runs fn(i) for i in [0, count) on `threads` workers. If any call throws,
/// the exception of the smallest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_at = count;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < failed_at) {
                    failed_at = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

/// Binomial proportion with a 95% Wilson interval; ci_low <= fraction <= ci_high.
struct MeasureEstimate {
    BigRational fraction;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    BigRational ci_low;
    BigRational ci_high;
    std::uint64_t seed = 0;
    Window window;

    /// sqrt(p (1 - p) / samples) at the observed p.
    double sigma() const;
};

MeasureEstimate make_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed, Window window);

/// Binomial standard deviation of a proportion estimate at p.
double binomial_sigma(double p, std::uint64_t samples);

} // namespace dioph
