#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "summatoria/arith.hpp"
#include "summatoria/common.hpp"
#include "summatoria/kahan.hpp"
#include "summatoria/stream.hpp"

namespace summatoria::summatory {

using stream::StreamConfig;

// Checkpointed exact values (n_i, S(n_i)) of one summatory function.
// Integer-valued functions carry exact_values alongside the double mirror.
struct SummatorySeries {
    std::string function_name;
    std::vector<u64> grid;
    std::vector<double> values;
    std::optional<std::vector<i64>> exact_values;
    u64 n_max = 0;

    bool integer_valued() const { return exact_values.has_value(); }
};

// Accumulator state at a block boundary, captured so a longer grid can resume
// a finished run and still produce byte-identical output: the stream restarts
// at restart_lo with the exact compensated-sum state, and checkpoint values
// below restart_lo are replayed from `values`.
struct ResumeState {
    u64 restart_lo = 1;  // block-aligned
    u64 block_size = sieve::kDefaultBlockSize;
    double acc_sum = 0.0;
    double acc_comp = 0.0;
    i64 exact_acc = 0;
    std::vector<double> values;
    std::vector<i64> exact_values;
};

// One streaming pass over [1, max(grid)]. Integer-valued functions accumulate
// in exact 64-bit arithmetic; real-valued ones in compensated double. The
// reduction order is fixed by the block partition, so results are identical
// for any worker count, and checkpoint values do not depend on the rest of
// the grid.
SummatorySeries compute_summatory(const arith::FunctionSpec& spec, std::vector<u64> grid,
                                  const StreamConfig& cfg = {},
                                  const ResumeState* resume = nullptr,
                                  ResumeState* state_out = nullptr);

// Exact sum of f(p) over primes p <= n_i for a pointwise spec.
SummatorySeries prime_sum(const arith::FunctionSpec& spec, std::vector<u64> grid,
                          const StreamConfig& cfg = {},
                          const ResumeState* resume = nullptr,
                          ResumeState* state_out = nullptr);

// Named wrappers over the two streaming passes.
SummatorySeries mertens(std::vector<u64> grid, const StreamConfig& cfg = {});
SummatorySeries squarefree_count(std::vector<u64> grid, const StreamConfig& cfg = {});
SummatorySeries chebyshev_theta(std::vector<u64> grid, const StreamConfig& cfg = {});

double mean_value(const SummatorySeries& s, std::size_t i);
// Same number as mean_value; named separately because indicator-type series
// are reported in density language.
double density(const SummatorySeries& s, std::size_t i);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

// One-pass mean and variance of f over [1, n]; variance clamped at 0 against
// rounding.
Moments empirical_variance(const arith::FunctionSpec& spec, u64 n,
                           const StreamConfig& cfg = {});

// n_i = round(start * ratio^i) filtered to <= n_max, deduplicated; n_max is
// appended when the last point falls short. Default ratio 10^(1/4).
std::vector<u64> geometric_grid(u64 start, double ratio, u64 n_max);
inline constexpr double kDefaultGridRatio = 1.7782794100389228;  // 10^(1/4)
inline constexpr u64 kDefaultGridStart = 1000;

// Per-integer values of `spec` on a block [lo, hi): the streaming primitive
// shared by the summatory, variance and normal-order passes. Exactly one of
// reals/ints is filled.
struct BlockValues {
    bool integer = false;
    std::vector<double> reals;
    std::vector<i64> ints;
};
BlockValues block_values(const arith::FunctionSpec& spec, u64 lo, u64 hi,
                         std::span<const u64> base_primes);

}  // namespace summatoria::summatory
