#pragma once

#include <exception>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "summatoria/common.hpp"
#include "summatoria/sieve.hpp"

namespace summatoria::stream {

struct StreamConfig {
    unsigned workers = 1;
    u64 block_size = sieve::kDefaultBlockSize;
    u64 n_cap = 1'000'000'000;      // global bound on streamed ranges
    std::string prime_cache_path;   // optional SPRIMES1 cache for base primes
};

// Base primes covering sqrt(n), through the cache file when configured.
std::vector<u64> base_primes_for(u64 n, const StreamConfig& cfg);

// Streams the fixed partition of [first, n] into blocks
// [1 + k*B, 1 + (k+1)*B) truncated at n+1, B = cfg.block_size. `first` must
// sit on a block boundary. work() runs on any worker; reduce() consumes
// results strictly in ascending block order, so reductions that are sensitive
// to order (compensated sums) see one canonical order regardless of worker
// count.
template <class R>
void run_blocks(u64 first, u64 n, const StreamConfig& cfg,
                const std::function<R(u64 lo, u64 hi)>& work,
                const std::function<void(R&&)>& reduce) {
    if (first < 1 || (first - 1) % cfg.block_size != 0)
        throw std::invalid_argument("run_blocks: first not on a block boundary");
    if (first > n) return;
    const u64 B = cfg.block_size;
    u64 k = (first - 1) / B;
    const unsigned workers = cfg.workers == 0 ? 1 : cfg.workers;
    while (true) {
        u64 wave_lo = 1 + k * B;
        if (wave_lo > n) break;
        // one wave of up to `workers` blocks
        std::vector<std::pair<u64, u64>> ranges;
        for (unsigned w = 0; w < workers; ++w) {
            u64 lo = 1 + (k + w) * B;
            if (lo > n) break;
            ranges.emplace_back(lo, std::min(n + 1, lo + B));
        }
        std::vector<R> results(ranges.size());
        std::vector<std::exception_ptr> errors(ranges.size());
        if (ranges.size() == 1 || workers == 1) {
            for (std::size_t i = 0; i < ranges.size(); ++i) {
                try {
                    results[i] = work(ranges[i].first, ranges[i].second);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        } else {
            std::vector<std::thread> pool;
            pool.reserve(ranges.size());
            for (std::size_t i = 0; i < ranges.size(); ++i)
                pool.emplace_back([&, i] {
                    try {
                        results[i] = work(ranges[i].first, ranges[i].second);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                });
            for (auto& t : pool) t.join();
        }
        for (std::size_t i = 0; i < ranges.size(); ++i) {
            if (errors[i]) std::rethrow_exception(errors[i]);
            reduce(std::move(results[i]));
        }
        k += ranges.size();
    }
}

}  // namespace summatoria::stream
