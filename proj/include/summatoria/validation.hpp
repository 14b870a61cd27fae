#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "summatoria/arith.hpp"
#include "summatoria/common.hpp"
#include "summatoria/models.hpp"
#include "summatoria/summatory.hpp"

namespace summatoria::validation {

// Acceptance thresholds. The claims under test carry unspecified O-constants;
// these caps are generous enough to accept true claims at desk scale and are
// echoed into every report so users can tighten them.
struct Policy {
    double ratio_cap = 3.0;
    double exponent_slack = 0.15;
    double stability_tol = 0.02;
    int stability_k = 5;
    double class_s_cap = 10.0;
    double epsilon = 0.5;
};

enum class Verdict { consistent, inconsistent, inconclusive };
std::string_view verdict_name(Verdict v);

struct ExponentFit {
    double alpha = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

enum class FitStatus { ok, exact_match, too_few_points };

struct FitOutcome {
    FitStatus status = FitStatus::too_few_points;
    ExponentFit fit;
};

struct Stabilization {
    double estimate = 0.0;
    double spread = 0.0;
    bool stable = false;
};

struct ValidationReport {
    std::string function_name;
    std::string model_name;
    std::vector<u64> grid;
    std::vector<double> residuals;      // S(n_i) - main(n_i)
    std::vector<double> main_values;
    std::vector<double> envelopes;
    std::vector<double> ratios;         // |R|/envelope per checkpoint
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double ratio_last = 0.0;
    double upper_ratio_max = 0.0;       // over the upper half of the grid
    FitOutcome fit;
    std::optional<Stabilization> stabilization;  // of signed R/envelope
    int zero_residuals = 0;
    bool exact_match = false;
    Verdict verdict = Verdict::inconclusive;
    Policy policy;
};

// Confronts an exact series with a model. Small-n transients would dominate
// the regression, so the exponent fit and the ratio cap are applied over the
// upper half of the grid. Grids must be ascending and within the model's
// domain. Deterministic: identical inputs give identical reports.
ValidationReport validate(const summatory::SummatorySeries& series,
                          const models::AsymptoticModel& model, const Policy& policy = {});

// OLS slope of log|R| against log n over the upper half of the grid.
// Checkpoints with R = 0 are dropped from the fit; all-zero residuals are
// reported as an exact match.
FitOutcome fit_error_exponent(std::span<const u64> grid, std::span<const double> residuals,
                              int min_points = 6);

// Mean/extent of the last k values; stable iff the spread is within
// stability_tol * max(1, |estimate|).
Stabilization stabilization_check(std::span<const double> values, int k,
                                  double stability_tol = Policy{}.stability_tol);

struct ClassSResult {
    double max_ratio = 0.0;
    u64 argmax_m = 0;
    bool pass = false;
};

// Empirical check of f(m) = O(ln m): evaluates |f(m)|/ln m over the top
// decade of [2, n] plus all prime powers <= n (the extremizers of additive
// growth). Pass iff the maximum stays under class_s_cap.
ClassSResult class_s_check(const arith::FunctionSpec& spec, u64 n, u64 sample,
                           const Policy& policy = {},
                           const summatory::StreamConfig& cfg = {});

struct NormalOrderResult {
    double fraction_within = 0.0;
    bool absolute_band = false;  // set when E[f,n] ~ 0 forced the absolute-band form
    double mean = 0.0;
};

// Fraction of m <= n with |f(m) - E[f,n]| <= eps |E[f,n]|. For the normal
// order claim the fraction must increase along a grid of n; callers check
// that protocol. A vanishing mean switches to the absolute band |f - E| <= eps.
NormalOrderResult normal_order_check(const arith::FunctionSpec& spec, u64 n, double epsilon,
                                     const summatory::StreamConfig& cfg = {});

}  // namespace summatoria::validation
