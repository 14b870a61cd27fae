#include "summatoria/summatory.hpp"

#include <algorithm>
#include <cmath>

namespace summatoria::summatory {

using arith::FunctionSpec;
using arith::SieveColumn;

// ---------------------------------------------------------------------------
// Per-block value computation
// ---------------------------------------------------------------------------

BlockValues block_values(const FunctionSpec& spec, u64 lo, u64 hi,
                         std::span<const u64> base_primes) {
    const std::size_t n = static_cast<std::size_t>(hi - lo);
    BlockValues out;
    if (spec.sieve_column != SieveColumn::none) {
        out.integer = true;
        out.ints.assign(n, 0);
        switch (spec.sieve_column) {
            case SieveColumn::unit:
                std::fill(out.ints.begin(), out.ints.end(), i64{1});
                break;
            case SieveColumn::omega:
                sieve::prime_power_sweep(
                    lo, hi, base_primes, [](std::size_t, u64) {},
                    [&](std::size_t i, u64, u32) { out.ints[i] += 1; });
                break;
            case SieveColumn::big_omega:
                sieve::prime_power_sweep(
                    lo, hi, base_primes, [](std::size_t, u64) {},
                    [&](std::size_t i, u64, u32 a) { out.ints[i] += a; });
                break;
            case SieveColumn::mobius:
                std::fill(out.ints.begin(), out.ints.end(), i64{1});
                sieve::prime_power_sweep(
                    lo, hi, base_primes, [](std::size_t, u64) {},
                    [&](std::size_t i, u64, u32 a) {
                        out.ints[i] = (a >= 2) ? 0 : -out.ints[i];
                    });
                break;
            case SieveColumn::squarefree:
                std::fill(out.ints.begin(), out.ints.end(), i64{1});
                sieve::prime_power_sweep(
                    lo, hi, base_primes, [](std::size_t, u64) {},
                    [&](std::size_t i, u64, u32 a) {
                        if (a >= 2) out.ints[i] = 0;
                    });
                break;
            case SieveColumn::prime_indicator:
                sieve::for_primes_in_block(lo, hi, base_primes,
                                           [&](u64 m) { out.ints[m - lo] = 1; });
                break;
            case SieveColumn::none:
                break;
        }
        return out;
    }
    out.reals.assign(n, 0.0);
    if (spec.kind == arith::FunctionKind::pointwise) {
        for (std::size_t i = 0; i < n; ++i) {
            double v = spec.pointwise_rule(static_cast<double>(lo + i));
            if (!std::isfinite(v)) throw arith::EvaluationError(spec.name, 0, 0, lo + i);
            out.reals[i] = v;
        }
        return out;
    }
    const bool additive = spec.additive_kind();
    if (!additive) std::fill(out.reals.begin(), out.reals.end(), 1.0);
    sieve::prime_power_sweep(
        lo, hi, base_primes,
        [](std::size_t, u64) {},
        [&](std::size_t i, u64 p, u32 a) {
            double v = arith::prime_power_value(spec, p, a, lo + i);
            if (additive)
                out.reals[i] += v;
            else
                out.reals[i] *= v;
        });
    return out;
}

// ---------------------------------------------------------------------------
// Streaming reduction with checkpoint snapshots
// ---------------------------------------------------------------------------

namespace {

// Values accumulated over one block in ascending m order, with a prefix
// snapshot taken at every checkpoint that falls inside the block. Snapshots
// read the accumulator without restructuring it, so a checkpoint's value
// never depends on the other grid points.
struct BlockPartial {
    std::vector<double> snapshots;
    std::vector<i64> int_snapshots;
    double total = 0.0;
    i64 int_total = 0;
};

class PartialBuilder {
public:
    PartialBuilder(std::span<const u64> checkpoints, bool integer)
        : cps_(checkpoints), integer_(integer) {}

    void add(u64 m, double v) {
        snapshot_before(m);
        acc_.add(v);
    }
    void add_int(u64 m, i64 v) {
        snapshot_before(m);
        iacc_ += v;
    }

    BlockPartial finish() {
        while (next_ < cps_.size()) take_snapshot();
        out_.total = acc_.value();
        out_.int_total = iacc_;
        return std::move(out_);
    }

private:
    void snapshot_before(u64 m) {
        while (next_ < cps_.size() && cps_[next_] < m) take_snapshot();
    }
    void take_snapshot() {
        if (integer_)
            out_.int_snapshots.push_back(iacc_);
        else
            out_.snapshots.push_back(acc_.value());
        ++next_;
    }

    std::span<const u64> cps_;
    bool integer_;
    KahanSum acc_;
    i64 iacc_ = 0;
    std::size_t next_ = 0;
    BlockPartial out_;
};

std::span<const u64> checkpoints_in(std::span<const u64> grid, u64 lo, u64 hi) {
    auto first = std::lower_bound(grid.begin(), grid.end(), lo);
    auto last = std::lower_bound(grid.begin(), grid.end(), hi);
    return grid.subspan(static_cast<std::size_t>(first - grid.begin()),
                        static_cast<std::size_t>(last - first));
}

void check_grid(std::span<const u64> grid, const StreamConfig& cfg) {
    if (grid.empty()) throw std::invalid_argument("summatory: empty grid");
    if (grid.front() < 1) throw std::invalid_argument("summatory: grid points must be >= 1");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw std::invalid_argument("summatory: grid not strictly increasing");
    if (grid.back() > cfg.n_cap)
        throw std::invalid_argument("summatory: max(grid) exceeds configured cap");
}

// Shared driver: compute_block(lo, hi, builder) feeds per-m contributions.
SummatorySeries run_series(
    std::string name, bool integer, std::vector<u64> grid, const StreamConfig& cfg,
    const ResumeState* resume, ResumeState* state_out,
    const std::function<void(u64, u64, std::span<const u64>, PartialBuilder&)>& compute_block) {
    check_grid(grid, cfg);
    const u64 n = grid.back();
    auto base = stream::base_primes_for(n, cfg);

    SummatorySeries series;
    series.function_name = std::move(name);
    series.grid = std::move(grid);
    series.n_max = n;
    series.values.reserve(series.grid.size());
    if (integer) series.exact_values.emplace();

    KahanSum global;
    i64 iglobal = 0;
    u64 first = 1;
    std::size_t emitted = 0;
    if (resume) {
        if (resume->block_size != cfg.block_size)
            throw std::invalid_argument("summatory resume: block size mismatch");
        if (resume->restart_lo < 1 || (resume->restart_lo - 1) % cfg.block_size != 0)
            throw std::invalid_argument("summatory resume: restart not block-aligned");
        first = resume->restart_lo;
        global.sum = resume->acc_sum;
        global.comp = resume->acc_comp;
        iglobal = resume->exact_acc;
        while (emitted < series.grid.size() && series.grid[emitted] < first) {
            if (integer) {
                if (emitted >= resume->exact_values.size())
                    throw std::invalid_argument("summatory resume: missing prefix values");
                i64 v = resume->exact_values[emitted];
                series.exact_values->push_back(v);
                series.values.push_back(static_cast<double>(v));
            } else {
                if (emitted >= resume->values.size())
                    throw std::invalid_argument("summatory resume: missing prefix values");
                series.values.push_back(resume->values[emitted]);
            }
            ++emitted;
        }
    }

    // State at the start of the block that contains the final checkpoint;
    // persisted so a longer grid can continue this run bit-identically.
    const u64 last_block_lo = 1 + ((n - 1) / cfg.block_size) * cfg.block_size;
    u64 reduce_lo = first;

    stream::run_blocks<BlockPartial>(
        first, n, cfg,
        [&](u64 lo, u64 hi) {
            PartialBuilder builder(checkpoints_in(series.grid, lo, hi), integer);
            compute_block(lo, hi, base, builder);
            return builder.finish();
        },
        [&](BlockPartial&& part) {
            if (state_out && reduce_lo == last_block_lo) {
                state_out->restart_lo = last_block_lo;
                state_out->block_size = cfg.block_size;
                state_out->acc_sum = global.sum;
                state_out->acc_comp = global.comp;
                state_out->exact_acc = iglobal;
                state_out->values = series.values;
                if (integer) state_out->exact_values = *series.exact_values;
            }
            if (integer) {
                for (i64 snap : part.int_snapshots) {
                    i64 v = iglobal + snap;
                    series.exact_values->push_back(v);
                    series.values.push_back(static_cast<double>(v));
                    ++emitted;
                }
                iglobal += part.int_total;
            } else {
                for (double snap : part.snapshots) {
                    KahanSum at = global;
                    at.add(snap);
                    series.values.push_back(at.value());
                    ++emitted;
                }
                global.add(part.total);
            }
            reduce_lo += cfg.block_size;
        });

    if (series.values.size() != series.grid.size())
        throw ComputeError("summatory: internal checkpoint mismatch");
    return series;
}

}  // namespace

SummatorySeries compute_summatory(const FunctionSpec& spec, std::vector<u64> grid,
                                  const StreamConfig& cfg, const ResumeState* resume,
                                  ResumeState* state_out) {
    const bool integer = spec.integer_valued && spec.sieve_column != SieveColumn::none;
    return run_series(
        spec.name, integer, std::move(grid), cfg, resume, state_out,
        [&](u64 lo, u64 hi, std::span<const u64> base, PartialBuilder& builder) {
            BlockValues vals = block_values(spec, lo, hi, base);
            if (vals.integer)
                for (std::size_t i = 0; i < vals.ints.size(); ++i)
                    builder.add_int(lo + i, vals.ints[i]);
            else
                for (std::size_t i = 0; i < vals.reals.size(); ++i)
                    builder.add(lo + i, vals.reals[i]);
        });
}

SummatorySeries prime_sum(const FunctionSpec& spec, std::vector<u64> grid,
                          const StreamConfig& cfg, const ResumeState* resume,
                          ResumeState* state_out) {
    if (spec.kind != arith::FunctionKind::pointwise)
        throw std::invalid_argument("prime_sum: pointwise spec required");
    return run_series(
        "prime_sum_" + spec.name, false, std::move(grid), cfg, resume, state_out,
        [&](u64 lo, u64 hi, std::span<const u64> base, PartialBuilder& builder) {
            sieve::for_primes_in_block(lo, hi, base, [&](u64 p) {
                double v = spec.pointwise_rule(static_cast<double>(p));
                if (!std::isfinite(v)) throw arith::EvaluationError(spec.name, p, 1, p);
                builder.add(p, v);
            });
        });
}

SummatorySeries mertens(std::vector<u64> grid, const StreamConfig& cfg) {
    auto s = compute_summatory(*arith::find_builtin("mobius"), std::move(grid), cfg);
    s.function_name = "mertens";
    return s;
}

SummatorySeries squarefree_count(std::vector<u64> grid, const StreamConfig& cfg) {
    auto s = compute_summatory(*arith::find_builtin("squarefree"), std::move(grid), cfg);
    s.function_name = "squarefree_count";
    return s;
}

SummatorySeries chebyshev_theta(std::vector<u64> grid, const StreamConfig& cfg) {
    auto s = prime_sum(*arith::find_builtin("log"), std::move(grid), cfg);
    s.function_name = "chebyshev_theta";
    return s;
}

double mean_value(const SummatorySeries& s, std::size_t i) {
    if (i >= s.grid.size()) throw std::invalid_argument("mean_value: index out of range");
    return s.values[i] / static_cast<double>(s.grid[i]);
}

double density(const SummatorySeries& s, std::size_t i) { return mean_value(s, i); }

Moments empirical_variance(const FunctionSpec& spec, u64 n, const StreamConfig& cfg) {
    if (n < 1) throw std::invalid_argument("empirical_variance: n >= 1 required");
    if (n > cfg.n_cap) throw std::invalid_argument("empirical_variance: n exceeds cap");
    auto base = stream::base_primes_for(n, cfg);
    struct Sums {
        double s1 = 0.0, s2 = 0.0;
    };
    KahanSum total1, total2;
    stream::run_blocks<Sums>(
        1, n, cfg,
        [&](u64 lo, u64 hi) {
            BlockValues vals = block_values(spec, lo, hi, base);
            KahanSum a1, a2;
            if (vals.integer)
                for (i64 v : vals.ints) {
                    double x = static_cast<double>(v);
                    a1.add(x);
                    a2.add(x * x);
                }
            else
                for (double x : vals.reals) {
                    a1.add(x);
                    a2.add(x * x);
                }
            return Sums{a1.value(), a2.value()};
        },
        [&](Sums&& s) {
            total1.add(s.s1);
            total2.add(s.s2);
        });
    Moments m;
    double nn = static_cast<double>(n);
    m.mean = total1.value() / nn;
    m.variance = std::max(0.0, total2.value() / nn - m.mean * m.mean);
    return m;
}

std::vector<u64> geometric_grid(u64 start, double ratio, u64 n_max) {
    if (start < 1 || !(ratio > 1.0) || n_max < start)
        throw std::invalid_argument("geometric_grid: require start >= 1, ratio > 1, n_max >= start");
    std::vector<u64> grid;
    for (int i = 0;; ++i) {
        double x = static_cast<double>(start) * std::pow(ratio, i);
        if (x > static_cast<double>(n_max) + 0.5) break;
        u64 v = static_cast<u64>(std::llround(x));
        if (v > n_max) break;
        if (grid.empty() || v > grid.back()) grid.push_back(v);
    }
    if (grid.empty() || grid.back() < n_max) grid.push_back(n_max);
    return grid;
}

}  // namespace summatoria::summatory
