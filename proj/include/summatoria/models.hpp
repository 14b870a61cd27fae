#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "summatoria/arith.hpp"
#include "summatoria/common.hpp"
#include "summatoria/quadrature.hpp"
#include "summatoria/stream.hpp"

namespace summatoria::models {

using quadrature::QuadratureConfig;
using stream::StreamConfig;

// A named main-term evaluator paired with the claimed error envelope.
// claimed_exponent is the alpha with envelope comparable to n^alpha up to log
// factors; strict_decay marks o(envelope) claims, where residual/envelope must
// tend to zero rather than merely stay bounded.
struct AsymptoticModel {
    std::string name;
    std::function<double(double)> main;
    std::function<double(double)> envelope;
    std::optional<double> claimed_exponent;
    bool strict_decay = false;
    double n_floor = 2.0;  // >= 3 whenever the formula contains ln ln n
    std::string formula;   // display form, e.g. "n ln ln n + O(n)"
};

// Exact finite sum over primes p <= n of f(p)/p for a strongly additive spec
// (or the shadow of an additive one). n = 1 gives the empty sum.
double strongly_additive_mean(const arith::FunctionSpec& spec, u64 n,
                              const StreamConfig& cfg = {});

// Mean-value models for the built-in additive functions: "log_phi" has main
// n ln n, "omega"/"big_omega" have main n ln ln n; all three have envelope n.
AsymptoticModel additive_mean_model(const std::string& name);

// Product main term for a real multiplicative g with |g| <= 1, truncated at
// prime_bound / power_bound. `diverged` applies the product-diverges-to-zero
// convention; condition_partials hold the partial sums of (1 - g(p))/p used
// for the divergence verdict; tail_bound estimates the truncation tail from
// the last decade's contribution.
struct WirsingResult {
    double value = 0.0;
    bool diverged = false;
    double tail_bound = 0.0;
    std::vector<std::pair<u64, double>> condition_partials;
};
WirsingResult wirsing_mean_value(const arith::FunctionSpec& spec, u64 prime_bound,
                                 u32 power_bound, const StreamConfig& cfg = {});

// Partial sums of (1 - g(p))/p with a heuristic convergence verdict: the sum
// is called divergent when it still grows at a ln-ln-comparable rate over the
// last sampled decade. No finite computation decides convergence; the raw
// partials are always reported next to the verdict.
struct DelangeResult {
    double partial_sum = 0.0;
    bool converged = false;
    std::vector<std::pair<u64, double>> partials;
};
DelangeResult delange_condition(const arith::FunctionSpec& spec, u64 prime_bound,
                                const StreamConfig& cfg = {});

// Main term n (ln n)^(kappa-1) / Gamma(kappa) * prod_p (1-1/p)^kappa
// (1 + sum_a g(p^a)/p^a), truncated like the Wirsing product. Returns 0 for
// kappa in {0, -1} (the 1/Gamma = 0 convention). Requires n >= 20, |kappa| <= 1.
double kubilius_main_term(const arith::FunctionSpec& spec, double kappa, u64 n,
                          u64 prime_bound, u32 power_bound, const StreamConfig& cfg = {});

struct IntegralEstimate {
    double main = 0.0;
    double envelope = 0.0;
    bool used_finite_difference = false;
};

// Integral main term for a strictly decreasing f with limit 0: main is
// the integral of f over [1, n], envelope the constant 1. Monotonicity is
// checked by sampling on a log grid.
IntegralEstimate euler_maclaurin_decreasing(const arith::FunctionSpec& f, u64 n,
                                            const QuadratureConfig& q = {});

// Non-decreasing variant: envelope f(n).
IntegralEstimate euler_maclaurin_nondecreasing(const arith::FunctionSpec& f, u64 n,
                                               const QuadratureConfig& q = {});

// Sum of m^k: main n^(k+1)/(k+1), envelope n^k. Requires k > 0.
AsymptoticModel power_sum_model(double k);

// S(n) = d* n + o(n): main d*.n, envelope n with strict decay.
AsymptoticModel density_limit_model(double d_star);

// Partial-summation estimate of sum_{p<=n} f(p) for continuously
// differentiable f: main n f(n)/ln n - integral of t f'(t)/ln t over [2, n],
// envelope n |f(n)|/ln^2 n + integral of t |f'(t)|/ln^2 t. When no derivative
// rule is supplied, central differences with step max(1e-6, 1e-8 t) are used
// and the result is flagged.
IntegralEstimate abel_prime_sum_estimate(const arith::FunctionSpec& f,
                                         const std::function<double(double)>* f_prime,
                                         u64 n, const QuadratureConfig& q = {});

// Central mean-value prediction exp(E[f, n]) for a positive multiplicative g
// with additive logarithm `additive_log_spec`; the multiplicative fluctuation
// factor is an envelope handled by validation, not a computable number.
double normal_order_mean_model(const arith::FunctionSpec& additive_log_spec, u64 n,
                               const StreamConfig& cfg = {});

}  // namespace summatoria::models
