#pragma once

// Periodogram PSD of a tachogram and the spectral HRV parameters derived
// from it: LF/HF band powers, their normalized forms, the LF/HF ratio and
// the power-law beta exponent.
//
// The periodogram removes the mean, applies no window beyond the implicit
// rectangular one, and is scaled as a one-sided density: the density summed
// over all bins above DC times the bin width equals the population variance
// of the input (Parseval). The DC bin is zeroed.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "hrvnet/dft.hpp"
#include "hrvnet/error.hpp"
#include "hrvnet/segments.hpp"

namespace hrvnet {

struct PSDEstimate {
    std::vector<double> density;  // ms^2/Hz at f_k = k*df, k = 0..N/2
    double df = 0.0;

    double nyquist_hz() const { return df * static_cast<double>(density.size() - 1); }
};

inline PSDEstimate periodogram(const Tachogram& tach) {
    const std::size_t n = tach.samples.size();
    require(n >= 2, "periodogram: need at least 2 samples");
    double mean = 0.0;
    for (double v : tach.samples) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = tach.samples[i] - mean;

    const auto spectrum = dft_half(centered);
    PSDEstimate psd;
    psd.df = tach.fs_hz / static_cast<double>(n);
    psd.density.assign(spectrum.size(), 0.0);
    const double scale = 1.0 / (static_cast<double>(n) * tach.fs_hz);
    for (std::size_t k = 1; k < spectrum.size(); ++k) {
        const double p = std::norm(spectrum[k]) * scale;
        const bool unpaired = (n % 2 == 0) && (k == n / 2);  // Nyquist has no mirror bin
        psd.density[k] = unpaired ? p : 2.0 * p;
    }
    return psd;
}

// Sum of density*df over bins with lo_hz <= f_k < hi_hz. The upper edge is
// included when the band closes its interval: at 0.40 Hz (the HF band's
// stated upper limit) and at Nyquist (so the full band recovers the total
// variance). DC is never counted.
inline double band_power(const PSDEstimate& psd, double lo_hz, double hi_hz) {
    require(lo_hz >= 0.0 && lo_hz < hi_hz, "band_power: need 0 <= lo_hz < hi_hz");
    require(hi_hz <= psd.nyquist_hz() + 1e-9, "band_power: hi_hz beyond Nyquist");
    constexpr double kEdgeTol = 1e-9;
    const bool closed_upper =
        std::abs(hi_hz - 0.40) < kEdgeTol || hi_hz >= psd.nyquist_hz() - kEdgeTol;
    double power = 0.0;
    for (std::size_t k = 1; k < psd.density.size(); ++k) {
        const double f = static_cast<double>(k) * psd.df;
        if (f < lo_hz - kEdgeTol) continue;
        if (closed_upper ? (f > hi_hz + kEdgeTol) : (f > hi_hz - kEdgeTol)) break;
        power += psd.density[k] * psd.df;
    }
    return power;
}

struct SpectralBands {
    double lf_lo = 0.04, lf_hi = 0.15;
    double hf_lo = 0.15, hf_hi = 0.40;
};

struct SpectralFeatures {
    double lf = 0.0, hf = 0.0;           // ms^2
    std::optional<double> lf_n, hf_n;    // band / total power
    std::optional<double> lf_hf;         // unset when hf = 0
    std::optional<double> beta;          // unset when < 3 usable fit points
};

inline constexpr double kDefaultBetaFitLo = 1.0 / 300.0;
inline constexpr double kDefaultBetaFitHi = 0.40;

// Ordinary least-squares slope of ln(density) against ln(f) over bins inside
// [fit_lo_hz, fit_hi_hz] with positive density.
inline std::optional<double> spectral_slope(const PSDEstimate& psd, double fit_lo_hz,
                                            double fit_hi_hz) {
    require(fit_lo_hz > 0.0 && fit_lo_hz < fit_hi_hz, "spectral_slope: bad fit range");
    constexpr double kEdgeTol = 1e-9;
    std::vector<double> lx, ly;
    for (std::size_t k = 1; k < psd.density.size(); ++k) {
        const double f = static_cast<double>(k) * psd.df;
        if (f < fit_lo_hz - kEdgeTol || f > fit_hi_hz + kEdgeTol) continue;
        if (psd.density[k] <= 0.0) continue;
        lx.push_back(std::log(f));
        ly.push_back(std::log(psd.density[k]));
    }
    if (lx.size() < 3) return std::nullopt;
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

inline SpectralFeatures spectral_features(const PSDEstimate& psd, const SpectralBands& bands = {},
                                          double fit_lo_hz = kDefaultBetaFitLo,
                                          double fit_hi_hz = kDefaultBetaFitHi) {
    SpectralFeatures out;
    out.lf = band_power(psd, bands.lf_lo, bands.lf_hi);
    out.hf = band_power(psd, bands.hf_lo, bands.hf_hi);
    const double total = band_power(psd, psd.df * 0.5, psd.nyquist_hz());
    if (total > 0.0) {
        out.lf_n = out.lf / total;
        out.hf_n = out.hf / total;
    }
    if (out.hf > 0.0) out.lf_hf = out.lf / out.hf;
    out.beta = spectral_slope(psd, fit_lo_hz, fit_hi_hz);
    return out;
}

}  // namespace hrvnet
