#include "summatoria/stream.hpp"

#include <cstdio>

namespace summatoria::stream {

std::vector<u64> base_primes_for(u64 n, const StreamConfig& cfg) {
    u64 bound = isqrt(n);
    if (!cfg.prime_cache_path.empty()) {
        if (auto cached = sieve::load_primes(cfg.prime_cache_path, bound)) return *cached;
        auto primes = sieve::primes_up_to(bound);
        try {
            sieve::save_primes(cfg.prime_cache_path, bound, primes);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "warning: %s\n", e.what());
        }
        return primes;
    }
    return sieve::primes_up_to(bound);
}

}  // namespace summatoria::stream
