#pragma once

// Natural cubic spline through (x, y) knots with strictly increasing x.
// Second derivatives at the end knots are zero; interior ones come from the
// standard tridiagonal system solved with the Thomas algorithm. Evaluation
// outside the knot range returns the nearest knot's value.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hrvnet/error.hpp"

namespace hrvnet {

class NaturalCubicSpline {
public:
    NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        require(n >= 2 && y_.size() == n, "spline: need >= 2 knots with matching x/y");
        for (std::size_t i = 1; i < n; ++i)
            require(x_[i] > x_[i - 1], "spline: knot positions must be strictly increasing");

        m_.assign(n, 0.0);
        if (n == 2) return;  // two knots degenerate to a straight line

        // Tridiagonal system for interior second derivatives m_[1..n-2].
        std::vector<double> diag(n - 2), rhs(n - 2), upper(n - 2);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            diag[i - 1] = 2.0 * (h0 + h1);
            upper[i - 1] = h1;
            rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        }
        for (std::size_t i = 1; i < n - 2; ++i) {
            const double lower = x_[i + 1] - x_[i];  // sub-diagonal entry of row i
            const double w = lower / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i-- > 0;) {
            const double above = (i + 1 < n - 2) ? upper[i] * m_[i + 2] : 0.0;
            m_[i + 1] = (rhs[i] - above) / diag[i];
        }
    }

    double operator()(double t) const {
        if (t <= x_.front()) return y_.front();
        if (t >= x_.back()) return y_.back();
        const auto it = std::upper_bound(x_.begin(), x_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - t) / h;
        const double b = (t - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

    double front_x() const { return x_.front(); }
    double back_x() const { return x_.back(); }

private:
    std::vector<double> x_, y_, m_;
};

}  // namespace hrvnet
