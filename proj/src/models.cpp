#include "summatoria/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "summatoria/kahan.hpp"
#include "summatoria/special.hpp"

namespace summatoria::models {

using arith::FunctionKind;
using arith::FunctionSpec;

namespace {

double ln(double x) { return std::log(x); }

std::string num(double v) {
    char buf[48];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// Streams primes <= n, calling term(p) in ascending order and Kahan-reducing
// per-block partials in block order.
double prime_stream_sum(u64 n, const StreamConfig& cfg,
                        const std::function<double(u64)>& term) {
    if (n < 2) return 0.0;
    auto base = stream::base_primes_for(n, cfg);
    KahanSum total;
    stream::run_blocks<double>(
        1, n, cfg,
        [&](u64 lo, u64 hi) {
            KahanSum part;
            sieve::for_primes_in_block(lo, hi, base, [&](u64 p) { part.add(term(p)); });
            return part.value();
        },
        [&](double&& v) { total.add(v); });
    return total.value();
}

void require_bounded_by_one(const FunctionSpec& spec, const char* who) {
    if (!spec.multiplicative_kind())
        throw std::invalid_argument(std::string(who) + ": multiplicative spec required");
    if (!spec.range_hint || std::max(std::abs(spec.range_hint->first),
                                     std::abs(spec.range_hint->second)) > 1.0)
        throw std::invalid_argument(std::string(who) + ": range hint must certify |g| <= 1");
}

double g_at_prime_power(const FunctionSpec& spec, u64 p, u32 a, const char* who) {
    double v = arith::prime_power_value(spec, p, a);
    if (std::abs(v) > 1.0)
        throw std::domain_error(std::string(who) + ": |g(p^a)| > 1 at p=" + std::to_string(p) +
                                ", a=" + std::to_string(a));
    return v;
}

// Sampled divergence verdict for sums of (1 - g(p))/p: still growing at a
// ln-ln-comparable rate over the last sampled decade => divergent.
bool partials_indicate_divergence(const std::vector<std::pair<u64, double>>& partials) {
    if (partials.size() < 2) return false;
    const auto& [pb, db] = partials.back();
    const auto& [pa, da] = partials[partials.size() - 2];
    double lnln_gap = ln(ln(double(pb))) - ln(ln(double(pa)));
    return (db - da) > 0.5 * lnln_gap;
}

std::vector<u64> condition_checkpoints(u64 prime_bound) {
    std::vector<u64> cps;
    for (u64 p : {u64{1000}, u64{10'000}, u64{100'000}, u64{1'000'000}})
        if (p <= prime_bound) cps.push_back(p);
    if (cps.empty() || cps.back() < prime_bound) cps.push_back(prime_bound);
    if (cps.size() < 2) cps.insert(cps.begin(), std::max<u64>(100, prime_bound / 10));
    return cps;
}

std::vector<std::pair<u64, double>> condition_partial_sums(const FunctionSpec& spec,
                                                           u64 prime_bound,
                                                           const StreamConfig& cfg,
                                                           const char* who) {
    auto cps = condition_checkpoints(prime_bound);
    auto base = stream::base_primes_for(prime_bound, cfg);
    std::vector<std::pair<u64, double>> out;
    KahanSum sum;
    std::size_t cp = 0;
    for (u64 lo = 1; lo <= prime_bound; lo += cfg.block_size) {
        u64 hi = std::min(prime_bound + 1, lo + cfg.block_size);
        sieve::for_primes_in_block(lo, hi, base, [&](u64 p) {
            while (cp < cps.size() && cps[cp] < p) out.emplace_back(cps[cp++], sum.value());
            sum.add((1.0 - g_at_prime_power(spec, p, 1, who)) / double(p));
        });
    }
    while (cp < cps.size()) out.emplace_back(cps[cp++], sum.value());
    return out;
}

// (1 - 1/p) * sum_{v=0..V} g(p^v)/p^v, the per-prime factor of the truncated
// mean-value product.
double wirsing_factor(const FunctionSpec& spec, u64 p, u32 power_bound, const char* who) {
    KahanSum s;
    s.add(1.0);
    double pw = 1.0;
    for (u32 v = 1; v <= power_bound; ++v) {
        pw /= double(p);
        s.add(g_at_prime_power(spec, p, v, who) * pw);
    }
    return (1.0 - 1.0 / double(p)) * s.value();
}

}  // namespace

double strongly_additive_mean(const FunctionSpec& spec, u64 n, const StreamConfig& cfg) {
    if (!spec.additive_kind())
        throw std::invalid_argument("strongly_additive_mean: additive spec required");
    return prime_stream_sum(n, cfg, [&](u64 p) {
        return arith::prime_power_value(spec, p, 1) / double(p);
    });
}

AsymptoticModel additive_mean_model(const std::string& name) {
    AsymptoticModel m;
    m.claimed_exponent = 1.0;
    if (name == "log_phi") {
        m.name = "additive_mean:log_phi";
        m.formula = "n ln n + O(n)";
        m.main = [](double n) { return n * ln(n); };
        m.n_floor = 2.0;
    } else if (name == "omega" || name == "big_omega") {
        m.name = "additive_mean:" + name;
        m.formula = "n ln ln n + O(n)";
        m.main = [](double n) { return n * ln(ln(n)); };
        m.n_floor = 3.0;
    } else {
        throw std::invalid_argument("additive_mean_model: unknown name " + name);
    }
    m.envelope = [](double n) { return n; };
    return m;
}

WirsingResult wirsing_mean_value(const FunctionSpec& spec, u64 prime_bound,
                                 u32 power_bound, const StreamConfig& cfg) {
    require_bounded_by_one(spec, "wirsing_mean_value");
    if (prime_bound < 1000)
        throw std::invalid_argument("wirsing_mean_value: prime_bound >= 1000 required");
    if (power_bound < 20)
        throw std::invalid_argument("wirsing_mean_value: power_bound >= 20 required");

    WirsingResult r;
    r.condition_partials = condition_partial_sums(spec, prime_bound, cfg, "wirsing_mean_value");
    r.diverged = partials_indicate_divergence(r.condition_partials);

    auto base = stream::base_primes_for(prime_bound, cfg);
    double product = 1.0;
    double product_at_decade = 1.0;  // value at prime_bound/10, for the tail estimate
    bool decade_captured = false;
    const u64 decade_mark = prime_bound / 10;
    for (u64 lo = 1; lo <= prime_bound; lo += cfg.block_size) {
        u64 hi = std::min(prime_bound + 1, lo + cfg.block_size);
        sieve::for_primes_in_block(lo, hi, base, [&](u64 p) {
            if (!decade_captured && p > decade_mark) {
                product_at_decade = product;
                decade_captured = true;
            }
            product *= wirsing_factor(spec, p, power_bound, "wirsing_mean_value");
        });
    }
    r.tail_bound = std::abs(product - product_at_decade);
    r.value = r.diverged ? 0.0 : product;
    return r;
}

DelangeResult delange_condition(const FunctionSpec& spec, u64 prime_bound,
                                const StreamConfig& cfg) {
    require_bounded_by_one(spec, "delange_condition");
    DelangeResult r;
    r.partials = condition_partial_sums(spec, prime_bound, cfg, "delange_condition");
    r.partial_sum = r.partials.back().second;
    r.converged = !partials_indicate_divergence(r.partials);
    return r;
}

double kubilius_main_term(const FunctionSpec& spec, double kappa, u64 n, u64 prime_bound,
                          u32 power_bound, const StreamConfig& cfg) {
    if (std::abs(kappa) > 1.0)
        throw std::invalid_argument("kubilius_main_term: |kappa| <= 1 required");
    if (n < 20) throw std::invalid_argument("kubilius_main_term: n >= 20 required");
    require_bounded_by_one(spec, "kubilius_main_term");
    if (kappa == 0.0 || kappa == -1.0) return 0.0;  // 1/Gamma(kappa) = 0 convention

    auto base = stream::base_primes_for(prime_bound, cfg);
    double product = 1.0;
    for (u64 lo = 1; lo <= prime_bound; lo += cfg.block_size) {
        u64 hi = std::min(prime_bound + 1, lo + cfg.block_size);
        sieve::for_primes_in_block(lo, hi, base, [&](u64 p) {
            KahanSum s;
            s.add(1.0);
            double pw = 1.0;
            for (u32 a = 1; a <= power_bound; ++a) {
                pw /= double(p);
                s.add(g_at_prime_power(spec, p, a, "kubilius_main_term") * pw);
            }
            product *= std::pow(1.0 - 1.0 / double(p), kappa) * s.value();
        });
    }
    double nn = double(n);
    return nn * std::pow(ln(nn), kappa - 1.0) / special::gamma_fn(kappa) * product;
}

namespace {

// Sampled monotonicity check over a log-spaced grid on [1, n].
enum class Monotone { strictly_decreasing, non_decreasing };

void check_monotone(const FunctionSpec& f, u64 n, Monotone mode) {
    if (f.kind != FunctionKind::pointwise)
        throw std::invalid_argument("euler_maclaurin: pointwise spec required");
    if (n < 2) return;
    constexpr int kSamples = 64;
    double prev = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        double t = std::exp(ln(double(n)) * i / kSamples);
        double v = f.pointwise_rule(t);
        if (!std::isfinite(v)) throw arith::EvaluationError(f.name, 0, 0, u64(t));
        if (i > 0) {
            if (mode == Monotone::strictly_decreasing && !(v < prev))
                throw std::invalid_argument("euler_maclaurin: sampled monotone decrease fails for " +
                                            f.name);
            if (mode == Monotone::non_decreasing && !(v >= prev))
                throw std::invalid_argument("euler_maclaurin: sampled non-decrease fails for " +
                                            f.name);
        }
        prev = v;
    }
}

}  // namespace

IntegralEstimate euler_maclaurin_decreasing(const FunctionSpec& f, u64 n,
                                            const QuadratureConfig& q) {
    check_monotone(f, n, Monotone::strictly_decreasing);
    IntegralEstimate r;
    r.envelope = 1.0;
    if (n <= 1) return r;  // empty interval
    r.main = quadrature::integrate(f.pointwise_rule, 1.0, double(n), q);
    return r;
}

IntegralEstimate euler_maclaurin_nondecreasing(const FunctionSpec& f, u64 n,
                                               const QuadratureConfig& q) {
    check_monotone(f, n, Monotone::non_decreasing);
    IntegralEstimate r;
    r.envelope = f.pointwise_rule(double(n));
    if (n <= 1) return r;
    r.main = quadrature::integrate(f.pointwise_rule, 1.0, double(n), q);
    return r;
}

AsymptoticModel power_sum_model(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("power_sum_model: k > 0 required");
    AsymptoticModel m;
    m.name = "power_sum:" + num(k);
    m.formula = "n^(k+1)/(k+1) + O(n^k)";
    m.main = [k](double n) { return std::pow(n, k + 1.0) / (k + 1.0); };
    m.envelope = [k](double n) { return std::pow(n, k); };
    m.claimed_exponent = k;
    return m;
}

AsymptoticModel density_limit_model(double d_star) {
    if (!std::isfinite(d_star))
        throw std::invalid_argument("density_limit_model: finite d* required");
    AsymptoticModel m;
    m.name = "density:" + num(d_star);
    m.formula = "d* n + o(n)";
    m.main = [d_star](double n) { return d_star * n; };
    m.envelope = [](double n) { return n; };
    m.claimed_exponent = 1.0;
    m.strict_decay = true;
    return m;
}

IntegralEstimate abel_prime_sum_estimate(const FunctionSpec& f,
                                         const std::function<double(double)>* f_prime,
                                         u64 n, const QuadratureConfig& q) {
    if (f.kind != FunctionKind::pointwise)
        throw std::invalid_argument("abel_prime_sum_estimate: pointwise spec required");
    if (n < 3) throw std::invalid_argument("abel_prime_sum_estimate: n >= 3 required");
    IntegralEstimate r;
    std::function<double(double)> deriv;
    if (f_prime && *f_prime) {
        deriv = *f_prime;
    } else {
        auto rule = f.pointwise_rule;
        deriv = [rule](double t) {
            double h = std::max(1e-6, 1e-8 * t);
            return (rule(t + h) - rule(t - h)) / (2.0 * h);
        };
        r.used_finite_difference = true;
    }
    double nn = double(n);
    double fn = f.pointwise_rule(nn);
    double lnn = ln(nn);
    double main_integral = quadrature::integrate_split_pow2(
        [&](double t) { return t * deriv(t) / ln(t); }, 2.0, nn, q);
    double env_integral = quadrature::integrate_split_pow2(
        [&](double t) { return t * std::abs(deriv(t)) / (ln(t) * ln(t)); }, 2.0, nn, q);
    r.main = nn * fn / lnn - main_integral;
    r.envelope = nn * std::abs(fn) / (lnn * lnn) + env_integral;
    return r;
}

double normal_order_mean_model(const FunctionSpec& additive_log_spec, u64 n,
                               const StreamConfig& cfg) {
    auto shadow = arith::strongly_additive_shadow(additive_log_spec);
    return std::exp(strongly_additive_mean(shadow, n, cfg));
}

}  // namespace summatoria::models
