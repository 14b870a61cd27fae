#pragma once

#include <cmath>

namespace summatoria {

// Neumaier-compensated accumulator. Streaming sums reach 10^8 terms; naive
// summation loses ~3 digits there. Deterministic for a fixed add order.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

}  // namespace summatoria
