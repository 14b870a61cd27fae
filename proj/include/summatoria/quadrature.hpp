#pragma once

#include <functional>

#include "summatoria/common.hpp"

namespace summatoria::quadrature {

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_depth = 50;
};

// Non-finite integrand or tolerance not reached within max_depth; carries the
// offending subinterval.
struct QuadratureError : ComputeError {
    QuadratureError(const std::string& what, double a_, double b_);
    double a = 0.0;
    double b = 0.0;
};

// Adaptive Simpson with Richardson acceptance. Throws QuadratureError when a
// subinterval fails to converge at max_depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg = {});

// integrate() over [a, b] pre-split at powers of two, which tames integrands
// with sharp behavior near the left endpoint (1/ln t near 2).
double integrate_split_pow2(const std::function<double(double)>& f, double a, double b,
                            const QuadratureConfig& cfg = {});

}  // namespace summatoria::quadrature
