#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "summatoria/common.hpp"
#include "summatoria/sieve.hpp"

namespace summatoria::arith {

enum class FunctionKind {
    additive,
    strongly_additive,
    multiplicative,
    strongly_multiplicative,
    pointwise,
};

std::string_view kind_name(FunctionKind k);

// Integer-valued builtins the streaming layer can read straight off a sieve
// sweep, keeping their summatory values in exact integer arithmetic.
enum class SieveColumn {
    none,
    omega,
    big_omega,
    mobius,
    unit,
    squarefree,
    prime_indicator,
};

// An arithmetic function given by a prime-power rule (factor-based kinds) or
// by a direct rule on a real argument (pointwise kind, evaluated at integers
// but extendable to [1, n] for quadrature).
struct FunctionSpec {
    std::string name;
    FunctionKind kind = FunctionKind::pointwise;
    std::function<double(u64 p, u32 alpha)> prime_power_rule;
    std::function<double(double t)> pointwise_rule;
    // Declared bounds (lo, hi) on values over prime powers; consulted by the
    // mean-value theorems that require |g| <= 1.
    std::optional<std::pair<double, double>> range_hint;
    bool integer_valued = false;
    SieveColumn sieve_column = SieveColumn::none;

    bool factor_based() const { return kind != FunctionKind::pointwise; }
    bool additive_kind() const {
        return kind == FunctionKind::additive || kind == FunctionKind::strongly_additive;
    }
    bool multiplicative_kind() const {
        return kind == FunctionKind::multiplicative ||
               kind == FunctionKind::strongly_multiplicative;
    }
    bool strong_kind() const {
        return kind == FunctionKind::strongly_additive ||
               kind == FunctionKind::strongly_multiplicative;
    }
};

// Non-finite rule output, reported with the offending point.
struct EvaluationError : ComputeError {
    EvaluationError(const std::string& fn, u64 p_, u32 alpha_, u64 m_);
    u64 p = 0;
    u32 alpha = 0;
    u64 m = 0;  // integer being evaluated, 0 when unknown
};

// Rule value at p^alpha with the strong-kind collapse (alpha -> 1) applied and
// finiteness checked.
double prime_power_value(const FunctionSpec& spec, u64 p, u32 alpha, u64 m = 0);

// Sum (additive kinds) or product (multiplicative kinds) of rule values over
// the canonical decomposition. m = 1 gives the empty sum 0 / empty product 1.
double evaluate(const FunctionSpec& spec, const sieve::Factorization& fact);

// Pointwise rule at integer m >= 1.
double evaluate_pointwise(const FunctionSpec& spec, u64 m);

// The strongly additive function agreeing with `spec` at primes:
// rule (p, alpha) -> spec.prime_power_rule(p, 1). Idempotent on strongly
// additive input; other kinds are rejected.
FunctionSpec strongly_additive_shadow(const FunctionSpec& spec);

// Registry of built-in functions. Names: omega, big_omega, log_phi, mobius,
// unit, squarefree, prime_indicator, g_star, reciprocal, log, power_<k>.
std::optional<FunctionSpec> find_builtin(std::string_view name);
std::vector<std::string> builtin_names();
FunctionSpec make_power(double k);

// Checks the structural invariants of a spec's kind on primes p <= 100,
// alpha <= 5 (strong kinds constant in alpha; exactly one rule present).
// Returns false and fills `why` on the first violation.
bool check_kind_invariants(const FunctionSpec& spec, std::string* why = nullptr);

}  // namespace summatoria::arith
