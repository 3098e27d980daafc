#pragma once

// Per-segment HRV parameters and their 24 h aggregation.
//
// Time-domain and Poincare parameters are computed on the raw Normal RR
// intervals of a segment; spectral parameters, beta and the fractal
// dimension on its evenly resampled tachogram. All variance-type statistics
// use the population divisor, which makes the Parseval and Poincare
// identities exact.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hrvnet/error.hpp"
#include "hrvnet/feature_vector.hpp"
#include "hrvnet/nonlinear.hpp"
#include "hrvnet/segments.hpp"
#include "hrvnet/spectrum.hpp"

namespace hrvnet {

struct TimeDomainFeatures {
    double mean_rr = 0.0;
    double sdnn = 0.0;
    double rmssd = 0.0;
    long nn50 = 0;
    double pnn50 = 0.0;
};

inline TimeDomainFeatures time_domain(std::span<const double> nn) {
    require(nn.size() >= 2, "time_domain: need at least 2 intervals");
    TimeDomainFeatures out;
    for (double v : nn) out.mean_rr += v;
    out.mean_rr /= static_cast<double>(nn.size());
    double var = 0.0;
    for (double v : nn) var += (v - out.mean_rr) * (v - out.mean_rr);
    out.sdnn = std::sqrt(var / static_cast<double>(nn.size()));
    double sq = 0.0;
    for (std::size_t i = 0; i + 1 < nn.size(); ++i) {
        const double d = nn[i + 1] - nn[i];
        sq += d * d;
        if (std::abs(d) > 50.0) ++out.nn50;
    }
    out.rmssd = std::sqrt(sq / static_cast<double>(nn.size() - 1));
    out.pnn50 = static_cast<double>(out.nn50) / static_cast<double>(nn.size());
    return out;
}

// The 15 HRV parameters, indexed by FeatureId (0..14). Ratios and fits that
// are undefined on a segment stay unset.
using HrvValues = std::array<std::optional<double>, kHrvFeatureCount>;

struct FeatureConfig {
    SpectralBands bands;
    double beta_fit_lo_hz = kDefaultBetaFitLo;
    double beta_fit_hi_hz = kDefaultBetaFitHi;
    int higuchi_kmax = 16;
};

inline HrvValues segment_features(const Segment& seg, const Tachogram& tach,
                                  const FeatureConfig& cfg = {}) {
    require(seg.accepted, "segment_features: segment was not accepted");
    std::vector<double> nn;
    for (const auto& beat : seg.beats)
        if (beat.annotation == BeatAnnotation::Normal) nn.push_back(beat.rr_ms);

    HrvValues out{};
    const auto set = [&out](FeatureId id, double v) { out[static_cast<int>(id)] = v; };

    const auto td = time_domain(nn);
    set(FeatureId::MeanRR, td.mean_rr);
    set(FeatureId::Sdnn, td.sdnn);
    set(FeatureId::Rmssd, td.rmssd);
    set(FeatureId::Nn50, static_cast<double>(td.nn50));
    set(FeatureId::Pnn50, td.pnn50);

    const auto psd = periodogram(tach);
    const auto sf = spectral_features(psd, cfg.bands, cfg.beta_fit_lo_hz, cfg.beta_fit_hi_hz);
    set(FeatureId::Lf, sf.lf);
    set(FeatureId::Hf, sf.hf);
    out[static_cast<int>(FeatureId::Lfn)] = sf.lf_n;
    out[static_cast<int>(FeatureId::Hfn)] = sf.hf_n;
    out[static_cast<int>(FeatureId::LfHf)] = sf.lf_hf;
    out[static_cast<int>(FeatureId::Beta)] = sf.beta;

    const auto pc = poincare(nn);
    set(FeatureId::Sd1, pc.sd1);
    set(FeatureId::Sd2, pc.sd2);
    out[static_cast<int>(FeatureId::Sd1Sd2)] = pc.sd1_sd2;

    out[static_cast<int>(FeatureId::Fd)] = higuchi_fd(tach.samples, cfg.higuchi_kmax);
    return out;
}

// Arithmetic mean per parameter over the segments where it is defined; a
// parameter undefined in every segment stays undefined.
inline HrvValues aggregate_24h(const std::vector<HrvValues>& fragments) {
    require(!fragments.empty(), "aggregate_24h: no accepted segments");
    HrvValues out{};
    for (int f = 0; f < kHrvFeatureCount; ++f) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& frag : fragments) {
            if (!frag[f]) continue;
            sum += *frag[f];
            ++count;
        }
        if (count > 0) out[f] = sum / static_cast<double>(count);
    }
    return out;
}

}  // namespace hrvnet
