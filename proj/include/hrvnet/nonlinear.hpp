#pragma once

// Non-linear HRV parameters: Poincare plot dispersion (SD1/SD2) and the
// Higuchi curve-length estimate of fractal dimension.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hrvnet/error.hpp"

namespace hrvnet {

struct PoincareFeatures {
    double sd1 = 0.0;
    double sd2 = 0.0;
    std::optional<double> sd1_sd2;  // unset when sd2 = 0
};

// Over successive pairs (x_i, x_{i+1}): SD1 is the population standard
// deviation of (x_i - x_{i+1})/sqrt(2), the spread across the identity line;
// SD2 that of (x_i + x_{i+1})/sqrt(2), the spread along it.
inline PoincareFeatures poincare(std::span<const double> nn) {
    require(nn.size() >= 3, "poincare: need at least 3 intervals");
    const std::size_t pairs = nn.size() - 1;
    double mean_d = 0.0, mean_s = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        mean_d += nn[i] - nn[i + 1];
        mean_s += nn[i] + nn[i + 1];
    }
    mean_d /= static_cast<double>(pairs);
    mean_s /= static_cast<double>(pairs);
    double var_d = 0.0, var_s = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const double dd = (nn[i] - nn[i + 1]) - mean_d;
        const double ds = (nn[i] + nn[i + 1]) - mean_s;
        var_d += dd * dd;
        var_s += ds * ds;
    }
    var_d /= static_cast<double>(pairs);
    var_s /= static_cast<double>(pairs);
    PoincareFeatures out;
    out.sd1 = std::sqrt(var_d / 2.0);
    out.sd2 = std::sqrt(var_s / 2.0);
    if (out.sd2 > 0.0) out.sd1_sd2 = out.sd1 / out.sd2;
    return out;
}

// Higuchi's algorithm. For stride k and offset m (1-based), the curve length
//   L_m(k) = (N-1) / (M*k) * sum_{i=1..M} |x[m+ik] - x[m+(i-1)k]| / k,
//   M = floor((N-m)/k),
// is averaged over m = 1..k, and the fractal dimension is the OLS slope of
// ln L(k) against ln(1/k) for k = 1..kmax. Returns nullopt when the series
// has no usable variation at the probed strides.
inline std::optional<double> higuchi_fd(std::span<const double> x, int kmax = 16) {
    require(kmax >= 2, "higuchi_fd: kmax must be >= 2");
    const std::size_t n = x.size();
    require(n >= 4 * static_cast<std::size_t>(kmax), "higuchi_fd: series too short for kmax");
    std::vector<double> lx, ly;
    for (int k = 1; k <= kmax; ++k) {
        double total = 0.0;
        for (int m = 1; m <= k; ++m) {
            const std::size_t steps = (n - static_cast<std::size_t>(m)) / static_cast<std::size_t>(k);
            double length = 0.0;
            for (std::size_t i = 1; i <= steps; ++i) {
                const std::size_t hi = static_cast<std::size_t>(m) + i * static_cast<std::size_t>(k) - 1;
                const std::size_t lo = hi - static_cast<std::size_t>(k);
                length += std::abs(x[hi] - x[lo]);
            }
            length *= static_cast<double>(n - 1) /
                      (static_cast<double>(steps) * static_cast<double>(k) * static_cast<double>(k));
            total += length;
        }
        const double mean_length = total / static_cast<double>(k);
        if (mean_length > 0.0) {
            lx.push_back(std::log(1.0 / static_cast<double>(k)));
            ly.push_back(std::log(mean_length));
        }
    }
    if (lx.size() < 2) return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

}  // namespace hrvnet
