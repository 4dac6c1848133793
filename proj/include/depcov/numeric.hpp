#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace depcov {

// Kahan compensated accumulator. Used wherever a sum feeds a quantity with a
// 1e-12-scale tolerance, so accumulation order never becomes the bottleneck.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

inline double mean(std::span<const double> v) {
    KahanSum acc;
    for (double x : v) acc.add(x);
    return v.empty() ? 0.0 : acc.value() / static_cast<double>(v.size());
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares of y on x.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const double mx = mean(x);
    const double my = mean(y);
    KahanSum sxy, sxx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy.add((x[i] - mx) * (y[i] - my));
        sxx.add((x[i] - mx) * (x[i] - mx));
    }
    LineFit f;
    f.slope = sxx.value() > 0.0 ? sxy.value() / sxx.value() : 0.0;
    f.intercept = my - f.slope * mx;
    return f;
}

}  // namespace depcov
