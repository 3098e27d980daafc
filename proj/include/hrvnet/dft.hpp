#pragma once

// Direct O(N^2) discrete Fourier transform over the half spectrum of a real
// signal. Segments here are a few hundred samples, so no FFT machinery is
// needed. Twiddles are taken from a per-call table indexed by (k*n) mod N,
// which keeps grid frequencies exactly orthogonal: a pure sine at bin j puts
// zero leakage into every other bin.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hrvnet/error.hpp"

namespace hrvnet {

namespace detail {

struct Twiddles {
    std::vector<double> cos_, sin_;
    explicit Twiddles(std::size_t n) : cos_(n), sin_(n) {
        constexpr double two_pi = 6.283185307179586476925286766559;
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = two_pi * static_cast<double>(j) / static_cast<double>(n);
            cos_[j] = std::cos(angle);
            sin_[j] = std::sin(angle);
        }
    }
};

}  // namespace detail

// X_k = sum_n x_n exp(-2*pi*i*k*n/N) for k = 0..N/2
inline std::vector<std::complex<double>> dft_half(std::span<const double> x) {
    const std::size_t n = x.size();
    require(n > 0, "dft_half: empty input");
    const detail::Twiddles tw(n);
    std::vector<std::complex<double>> out(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        double re = 0.0, im = 0.0;
        std::size_t idx = 0;
        for (std::size_t j = 0; j < n; ++j) {
            re += x[j] * tw.cos_[idx];
            im -= x[j] * tw.sin_[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = {re, im};
    }
    return out;
}

// Inverse of dft_half for a real signal of length n; Hermitian symmetry of
// the missing bins is implied. X must hold n/2 + 1 entries.
inline std::vector<double> idft_half(std::span<const std::complex<double>> X, std::size_t n) {
    require(n > 0 && X.size() == n / 2 + 1, "idft_half: spectrum size mismatch");
    const detail::Twiddles tw(n);
    const bool even = (n % 2 == 0);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = X[0].real();
        std::size_t idx = 0;
        for (std::size_t k = 1; k + (even ? 1 : 0) <= n / 2; ++k) {
            idx += j;
            if (idx >= n) idx -= n;
            acc += 2.0 * (X[k].real() * tw.cos_[idx] - X[k].imag() * tw.sin_[idx]);
        }
        if (even) {
            // Nyquist bin is its own conjugate
            const std::size_t half_idx = (j * (n / 2)) % n;
            acc += X[n / 2].real() * tw.cos_[half_idx];
        }
        out[j] = acc / static_cast<double>(n);
    }
    return out;
}

}  // namespace hrvnet
