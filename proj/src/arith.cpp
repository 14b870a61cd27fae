#include "summatoria/arith.hpp"

#include <cmath>
#include <charconv>

namespace summatoria::arith {

std::string_view kind_name(FunctionKind k) {
    switch (k) {
        case FunctionKind::additive: return "additive";
        case FunctionKind::strongly_additive: return "strongly_additive";
        case FunctionKind::multiplicative: return "multiplicative";
        case FunctionKind::strongly_multiplicative: return "strongly_multiplicative";
        case FunctionKind::pointwise: return "pointwise";
    }
    return "?";
}

EvaluationError::EvaluationError(const std::string& fn, u64 p_, u32 alpha_, u64 m_)
    : ComputeError("evaluation of " + fn + " not finite at p=" + std::to_string(p_) +
                   ", alpha=" + std::to_string(alpha_) +
                   (m_ ? ", m=" + std::to_string(m_) : std::string{})),
      p(p_), alpha(alpha_), m(m_) {}

double prime_power_value(const FunctionSpec& spec, u64 p, u32 alpha, u64 m) {
    double v = spec.prime_power_rule(p, spec.strong_kind() ? 1 : alpha);
    if (!std::isfinite(v)) throw EvaluationError(spec.name, p, alpha, m);
    return v;
}

double evaluate(const FunctionSpec& spec, const sieve::Factorization& fact) {
    if (!spec.factor_based())
        throw std::invalid_argument("evaluate: " + spec.name + " is pointwise");
    if (spec.additive_kind()) {
        double acc = 0.0;
        for (const auto& f : fact.factors) acc += prime_power_value(spec, f.p, f.alpha, fact.m);
        return acc;
    }
    double acc = 1.0;
    for (const auto& f : fact.factors) acc *= prime_power_value(spec, f.p, f.alpha, fact.m);
    return acc;
}

double evaluate_pointwise(const FunctionSpec& spec, u64 m) {
    if (spec.kind != FunctionKind::pointwise)
        throw std::invalid_argument("evaluate_pointwise: " + spec.name + " is factor-based");
    if (m < 1) throw std::invalid_argument("evaluate_pointwise: m >= 1 required");
    double v = spec.pointwise_rule(static_cast<double>(m));
    if (!std::isfinite(v)) throw EvaluationError(spec.name, 0, 0, m);
    return v;
}

FunctionSpec strongly_additive_shadow(const FunctionSpec& spec) {
    if (spec.kind == FunctionKind::strongly_additive) return spec;
    if (spec.kind != FunctionKind::additive)
        throw std::invalid_argument("strongly_additive_shadow: " + spec.name +
                                    " is not additive");
    FunctionSpec shadow = spec;
    shadow.name = spec.name + "_star";
    shadow.kind = FunctionKind::strongly_additive;
    shadow.sieve_column = SieveColumn::none;
    shadow.integer_valued = false;
    auto rule = spec.prime_power_rule;
    shadow.prime_power_rule = [rule](u64 p, u32) { return rule(p, 1); };
    return shadow;
}

// Deterministic trial-division primality; only exercised for the pointwise
// prime indicator, never on hot sieve paths.
static bool is_prime_u64(u64 m) {
    if (m < 2) return false;
    for (u64 d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

static std::string format_power_name(double k) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, k);
    return "power_" + std::string(buf, r.ptr);
}

FunctionSpec make_power(double k) {
    if (!(k > 0)) throw std::invalid_argument("power_k: k > 0 required");
    FunctionSpec s;
    s.name = format_power_name(k);
    s.kind = FunctionKind::pointwise;
    s.pointwise_rule = [k](double t) { return std::pow(t, k); };
    return s;
}

static FunctionSpec builtin_omega() {
    FunctionSpec s;
    s.name = "omega";
    s.kind = FunctionKind::strongly_additive;
    s.prime_power_rule = [](u64, u32) { return 1.0; };
    s.integer_valued = true;
    s.sieve_column = SieveColumn::omega;
    return s;
}

static FunctionSpec builtin_big_omega() {
    FunctionSpec s;
    s.name = "big_omega";
    s.kind = FunctionKind::additive;
    s.prime_power_rule = [](u64, u32 a) { return static_cast<double>(a); };
    s.integer_valued = true;
    s.sieve_column = SieveColumn::big_omega;
    return s;
}

static FunctionSpec builtin_log_phi() {
    FunctionSpec s;
    s.name = "log_phi";
    s.kind = FunctionKind::additive;
    // ln phi(p^a) = (a-1) ln p + ln(p-1)
    s.prime_power_rule = [](u64 p, u32 a) {
        return (a - 1.0) * std::log(static_cast<double>(p)) +
               std::log(static_cast<double>(p - 1));
    };
    return s;
}

static FunctionSpec builtin_mobius() {
    FunctionSpec s;
    s.name = "mobius";
    s.kind = FunctionKind::multiplicative;
    s.prime_power_rule = [](u64, u32 a) { return a == 1 ? -1.0 : 0.0; };
    s.range_hint = {{-1.0, 1.0}};
    s.integer_valued = true;
    s.sieve_column = SieveColumn::mobius;
    return s;
}

static FunctionSpec builtin_unit() {
    FunctionSpec s;
    s.name = "unit";
    s.kind = FunctionKind::strongly_multiplicative;
    s.prime_power_rule = [](u64, u32) { return 1.0; };
    s.range_hint = {{1.0, 1.0}};
    s.integer_valued = true;
    s.sieve_column = SieveColumn::unit;
    return s;
}

static FunctionSpec builtin_squarefree() {
    FunctionSpec s;
    s.name = "squarefree";
    s.kind = FunctionKind::multiplicative;
    s.prime_power_rule = [](u64, u32 a) { return a == 1 ? 1.0 : 0.0; };
    s.range_hint = {{0.0, 1.0}};
    s.integer_valued = true;
    s.sieve_column = SieveColumn::squarefree;
    return s;
}

static FunctionSpec builtin_prime_indicator() {
    FunctionSpec s;
    s.name = "prime_indicator";
    s.kind = FunctionKind::pointwise;
    s.pointwise_rule = [](double t) {
        return is_prime_u64(static_cast<u64>(t)) ? 1.0 : 0.0;
    };
    s.range_hint = {{0.0, 1.0}};
    s.integer_valued = true;
    s.sieve_column = SieveColumn::prime_indicator;
    return s;
}

// exp(omega(m) + sum_{p|m} ln(1-1/p)): strongly multiplicative with value
// e*(1-1/p) at every prime power of p.
static FunctionSpec builtin_g_star() {
    FunctionSpec s;
    s.name = "g_star";
    s.kind = FunctionKind::strongly_multiplicative;
    s.prime_power_rule = [](u64 p, u32) {
        return std::exp(1.0) * (1.0 - 1.0 / static_cast<double>(p));
    };
    return s;
}

static FunctionSpec builtin_reciprocal() {
    FunctionSpec s;
    s.name = "reciprocal";
    s.kind = FunctionKind::pointwise;
    s.pointwise_rule = [](double t) { return 1.0 / t; };
    s.range_hint = {{0.0, 1.0}};
    return s;
}

static FunctionSpec builtin_log() {
    FunctionSpec s;
    s.name = "log";
    s.kind = FunctionKind::pointwise;
    s.pointwise_rule = [](double t) { return std::log(t); };
    return s;
}

std::optional<FunctionSpec> find_builtin(std::string_view name) {
    if (name == "omega") return builtin_omega();
    if (name == "big_omega") return builtin_big_omega();
    if (name == "log_phi") return builtin_log_phi();
    if (name == "mobius") return builtin_mobius();
    if (name == "unit") return builtin_unit();
    if (name == "squarefree") return builtin_squarefree();
    if (name == "prime_indicator") return builtin_prime_indicator();
    if (name == "g_star") return builtin_g_star();
    if (name == "reciprocal") return builtin_reciprocal();
    if (name == "log") return builtin_log();
    if (name.starts_with("power_")) {
        std::string_view ks = name.substr(6);
        double k = 0;
        auto r = std::from_chars(ks.data(), ks.data() + ks.size(), k);
        if (r.ec != std::errc{} || r.ptr != ks.data() + ks.size() || !(k > 0))
            return std::nullopt;
        return make_power(k);
    }
    return std::nullopt;
}

std::vector<std::string> builtin_names() {
    return {"omega",     "big_omega",       "log_phi", "mobius",     "unit",
            "squarefree", "prime_indicator", "g_star",  "reciprocal", "log",
            "power_<k>"};
}

bool check_kind_invariants(const FunctionSpec& spec, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = spec.name + ": " + msg;
        return false;
    };
    if (spec.kind == FunctionKind::pointwise) {
        if (!spec.pointwise_rule) return fail("pointwise kind without pointwise_rule");
        if (spec.prime_power_rule) return fail("pointwise kind with prime_power_rule");
        return true;
    }
    if (!spec.prime_power_rule) return fail("factor-based kind without prime_power_rule");
    if (spec.pointwise_rule) return fail("factor-based kind with pointwise_rule");
    if (spec.strong_kind()) {
        for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                      53, 59, 61, 67, 71, 73, 79, 83, 89, 97}) {
            double v1 = spec.prime_power_rule(p, 1);
            for (u32 a = 2; a <= 5; ++a) {
                double va = spec.prime_power_rule(p, a);
                if (!(std::abs(va - v1) <= 1e-12 * std::max(1.0, std::abs(v1))))
                    return fail("strong kind varies with alpha at p=" + std::to_string(p) +
                                ", alpha=" + std::to_string(a));
            }
        }
    }
    return true;
}

}  // namespace summatoria::arith
