#pragma once

// Test-only oracles, deliberately independent of the library's sieve paths:
// plain trial division and gcd counting, nothing shared with src/.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

struct Factor {
    u64 p;
    unsigned alpha;
};

inline std::vector<Factor> factorize(u64 m) {
    std::vector<Factor> out;
    for (u64 d = 2; d * d <= m; ++d) {
        unsigned a = 0;
        while (m % d == 0) {
            m /= d;
            ++a;
        }
        if (a) out.push_back({d, a});
    }
    if (m > 1) out.push_back({m, 1});
    return out;
}

inline int mu(u64 m) {
    if (m == 1) return 1;
    auto f = factorize(m);
    for (const auto& x : f)
        if (x.alpha >= 2) return 0;
    return (f.size() % 2 == 0) ? 1 : -1;
}

inline unsigned omega(u64 m) { return static_cast<unsigned>(factorize(m).size()); }

inline unsigned big_omega(u64 m) {
    unsigned total = 0;
    for (const auto& x : factorize(m)) total += x.alpha;
    return total;
}

inline u64 phi(u64 m) {
    u64 result = m;
    for (const auto& x : factorize(m)) result = result / x.p * (x.p - 1);
    return result;
}

// phi by definition: |{k <= m : gcd(k, m) = 1}|. Quadratic; small m only.
inline u64 phi_gcd_count(u64 m) {
    u64 count = 0;
    for (u64 k = 1; k <= m; ++k)
        if (std::gcd(k, m) == 1) ++count;
    return count;
}

inline u64 spf(u64 m) {
    if (m == 1) return 1;
    return factorize(m).front().p;
}

inline bool is_prime(u64 m) {
    if (m < 2) return false;
    for (u64 d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

// Independent plain sieve (bool array, no segmentation).
inline std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    std::vector<bool> comp(n + 1, false);
    for (u64 p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        primes.push_back(p);
        for (u64 q = p * p; q <= n; q += p) comp[q] = true;
    }
    return primes;
}

}  // namespace oracle
