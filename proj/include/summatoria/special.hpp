#pragma once

#include "summatoria/common.hpp"

namespace summatoria::special {

// Gamma function by Lanczos approximation (g = 7, 9 coefficients), reflection
// below 1/2. Relative error <= 1e-12 on the real range used here ([-1, 1]
// away from the poles and small positive arguments). Poles (x = 0, -1, -2, ...)
// are rejected; callers that want the 1/Gamma = 0 convention handle those
// before calling.
double gamma_fn(double x);

}  // namespace summatoria::special
