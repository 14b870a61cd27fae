#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "summatoria/common.hpp"

namespace summatoria::sieve {

inline constexpr u64 kDefaultBlockSize = u64{1} << 20;

// Per-integer arithmetic data for a contiguous range [lo, hi).
// Conventions at m = 1: spf = 1 (sentinel, never a prime), mu = 1,
// omega = 0, big_omega = 0, phi = 1.
struct SieveBlock {
    u64 lo = 0;  // inclusive, >= 1
    u64 hi = 0;  // exclusive
    std::vector<u64> spf;
    std::vector<i8> mu;
    std::vector<u8> omega;
    std::vector<u8> big_omega;
    std::vector<u64> phi;

    u64 size() const { return hi - lo; }
    bool contains(u64 m) const { return m >= lo && m < hi; }
    std::size_t index(u64 m) const { return static_cast<std::size_t>(m - lo); }
    bool is_prime(u64 m) const { return m >= 2 && spf[index(m)] == m; }
};

struct PrimePower {
    u64 p;
    u32 alpha;
    bool operator==(const PrimePower&) const = default;
};

// Canonical decomposition m = p1^a1 ... pt^at, primes strictly increasing.
struct Factorization {
    u64 m = 0;
    std::vector<PrimePower> factors;
};

// Exactly the primes <= n, ascending. Simple monolithic sieve; callers that
// stream large ranges use blocks instead of materializing prime lists.
std::vector<u64> primes_up_to(u64 n);

// |{p <= n}|, exact by segmented sieve count.
u64 prime_count(u64 n);

// Builds the block [lo, hi). base_primes must contain every prime <= sqrt(hi-1)
// in ascending order; hi - lo must not exceed `capacity`.
SieveBlock build_block(u64 lo, u64 hi, std::span<const u64> base_primes,
                       u64 capacity = kDefaultBlockSize);

// Canonical factorization of m by smallest-prime-factor chasing. The table
// must be anchored at 1 so every quotient stays in range. m = 1 yields an
// empty factor list; m = 0 is rejected.
Factorization factorize(u64 m, const SieveBlock& table);

// Prime-list cache file: magic "SPRIMES1", then bound, count and the primes,
// all little-endian 64-bit.
void save_primes(const std::string& path, u64 bound, std::span<const u64> primes);

// Loads primes <= bound from a cache written with save_primes. Returns nullopt
// if the file is absent, malformed, or was sieved to a smaller bound.
std::optional<std::vector<u64>> load_primes(const std::string& path, u64 bound);

// ---------------------------------------------------------------------------
// Block sweeps. Both visit a range [lo, hi) given base primes covering
// sqrt(hi-1); they are the primitives behind build_block and the streaming
// summatory passes.
// ---------------------------------------------------------------------------

namespace detail {

void check_block_args(u64 lo, u64 hi, std::span<const u64> base_primes, u64 capacity);

}  // namespace detail

// Visits every prime-power component of every m in [lo, hi):
//   begin(i, m)        once per position, ascending m
//   visit(i, p, alpha) once per p^alpha || m; per position, p ascending
// Positions interleave across primes, so per-position state must live in
// caller-side arrays indexed by i.
template <class Begin, class Visit>
void prime_power_sweep(u64 lo, u64 hi, std::span<const u64> base_primes,
                       Begin&& begin, Visit&& visit,
                       u64 capacity = kDefaultBlockSize) {
    detail::check_block_args(lo, hi, base_primes, capacity);
    const std::size_t n = static_cast<std::size_t>(hi - lo);
    std::vector<u64> remaining(n);
    for (std::size_t i = 0; i < n; ++i) {
        remaining[i] = lo + i;
        begin(i, lo + i);
    }
    for (u64 p : base_primes) {
        if (p * p > hi - 1) break;
        u64 start = ((lo + p - 1) / p) * p;
        for (u64 m = start; m < hi; m += p) {
            std::size_t i = static_cast<std::size_t>(m - lo);
            u32 alpha = 0;
            while (remaining[i] % p == 0) {
                remaining[i] /= p;
                ++alpha;
            }
            visit(i, p, alpha);  // alpha >= 1: smaller primes cannot consume p
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (remaining[i] > 1) visit(i, remaining[i], u32{1});
}

// Calls fn(m) for every prime m in [lo, hi), ascending. Plain composite
// marking, considerably cheaper than the division sweep.
template <class Fn>
void for_primes_in_block(u64 lo, u64 hi, std::span<const u64> base_primes, Fn&& fn,
                         u64 capacity = kDefaultBlockSize) {
    detail::check_block_args(lo, hi, base_primes, capacity);
    const std::size_t n = static_cast<std::size_t>(hi - lo);
    std::vector<u8> composite(n, 0);
    for (u64 p : base_primes) {
        if (p * p > hi - 1) break;
        u64 start = ((lo + p - 1) / p) * p;
        if (start < p * p) start = p * p;  // p itself stays prime
        for (u64 m = start; m < hi; m += p)
            composite[static_cast<std::size_t>(m - lo)] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        u64 m = lo + i;
        if (m >= 2 && !composite[i]) fn(m);
    }
}

}  // namespace summatoria::sieve
