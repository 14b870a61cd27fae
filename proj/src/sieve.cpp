#include "summatoria/sieve.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace summatoria::sieve {

namespace detail {

static u64 largest_prime_leq(u64 n) {
    for (u64 m = n; m >= 2; --m) {
        bool prime = true;
        for (u64 d = 2; d * d <= m; ++d)
            if (m % d == 0) { prime = false; break; }
        if (prime) return m;
    }
    return 0;
}

void check_block_args(u64 lo, u64 hi, std::span<const u64> base_primes, u64 capacity) {
    if (lo < 1 || lo >= hi)
        throw std::invalid_argument("sieve block: require 1 <= lo < hi");
    if (hi - lo > capacity)
        throw std::invalid_argument("sieve block: hi - lo exceeds block capacity");
    u64 need = isqrt(hi - 1);
    if (need >= 2) {
        if (base_primes.empty() || base_primes.back() < largest_prime_leq(need))
            throw std::invalid_argument("sieve block: base_primes incomplete below sqrt(hi-1)");
    }
    for (std::size_t i = 1; i < base_primes.size(); ++i)
        if (base_primes[i] <= base_primes[i - 1])
            throw std::invalid_argument("sieve block: base_primes not ascending");
}

}  // namespace detail

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (u64 p = 2; p * p <= n; ++p) {
        if (composite[p]) continue;
        for (u64 m = p * p; m <= n; m += p) composite[m] = true;
    }
    primes.reserve(static_cast<std::size_t>(n >= 17 ? 1.3 * n / std::log(double(n)) : 8));
    for (u64 m = 2; m <= n; ++m)
        if (!composite[m]) primes.push_back(m);
    return primes;
}

u64 prime_count(u64 n) {
    if (n < 2) return 0;
    auto base = primes_up_to(isqrt(n));
    u64 count = 0;
    for (u64 lo = 1; lo <= n; lo += kDefaultBlockSize) {
        u64 hi = std::min(n + 1, lo + kDefaultBlockSize);
        for_primes_in_block(lo, hi, base, [&](u64) { ++count; });
    }
    return count;
}

SieveBlock build_block(u64 lo, u64 hi, std::span<const u64> base_primes, u64 capacity) {
    SieveBlock b;
    b.lo = lo;
    b.hi = hi;
    const std::size_t n = static_cast<std::size_t>(hi - lo);
    b.spf.assign(n, 0);
    b.mu.assign(n, 1);
    b.omega.assign(n, 0);
    b.big_omega.assign(n, 0);
    b.phi.assign(n, 0);
    prime_power_sweep(
        lo, hi, base_primes,
        [&](std::size_t i, u64 m) {
            b.phi[i] = m;
            if (m == 1) b.spf[i] = 1;  // sentinel, never treated as prime
        },
        [&](std::size_t i, u64 p, u32 alpha) {
            if (b.spf[i] == 0) b.spf[i] = p;
            b.mu[i] = (alpha >= 2) ? i8{0} : i8(-b.mu[i]);
            b.omega[i] += 1;
            b.big_omega[i] += static_cast<u8>(alpha);
            b.phi[i] = b.phi[i] / p * (p - 1);
        },
        capacity);
    return b;
}

Factorization factorize(u64 m, const SieveBlock& table) {
    if (m == 0) throw std::invalid_argument("factorize: m = 0");
    if (table.lo != 1)
        throw std::invalid_argument("factorize: spf table must be anchored at 1");
    if (!table.contains(m))
        throw std::invalid_argument("factorize: m outside the sieved range");
    Factorization f;
    f.m = m;
    u64 rest = m;
    while (rest > 1) {
        u64 p = table.spf[table.index(rest)];
        u32 alpha = 0;
        while (rest % p == 0) {
            rest /= p;
            ++alpha;
        }
        f.factors.push_back({p, alpha});
    }
    return f;
}

// ---------------------------------------------------------------------------
// Prime cache file
// ---------------------------------------------------------------------------

static constexpr char kMagic[8] = {'S', 'P', 'R', 'I', 'M', 'E', 'S', '1'};

static void put_u64_le(std::string& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

static u64 get_u64_le(const unsigned char* p) {
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<u64>(p[i]) << (8 * i);
    return v;
}

void save_primes(const std::string& path, u64 bound, std::span<const u64> primes) {
    std::string buf;
    buf.reserve(24 + 8 * primes.size());
    buf.append(kMagic, 8);
    put_u64_le(buf, bound);
    put_u64_le(buf, primes.size());
    for (u64 p : primes) put_u64_le(buf, p);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ComputeError("prime cache: cannot open " + path + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw ComputeError("prime cache: short write to " + path);
}

std::optional<std::vector<u64>> load_primes(const std::string& path, u64 bound) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 24 || std::memcmp(buf.data(), kMagic, 8) != 0) return std::nullopt;
    const unsigned char* p = reinterpret_cast<const unsigned char*>(buf.data());
    u64 cached_bound = get_u64_le(p + 8);
    u64 count = get_u64_le(p + 16);
    if (cached_bound < bound) return std::nullopt;
    if (buf.size() != 24 + 8 * count) return std::nullopt;
    std::vector<u64> primes;
    primes.reserve(static_cast<std::size_t>(count));
    for (u64 i = 0; i < count; ++i) {
        u64 q = get_u64_le(p + 24 + 8 * i);
        if (q > bound) break;
        primes.push_back(q);
    }
    return primes;
}

}  // namespace summatoria::sieve
