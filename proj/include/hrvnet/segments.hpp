#pragma once

// Splits an RR series into fixed-length analysis windows, applies the
// acceptance gates, and resamples accepted windows onto an even 2 Hz grid.
//
// Windows tile [0, total) from the start of the recording; a beat belongs to
// the window containing its onset and a trailing partial window is dropped.
// A window is accepted when (in order of checking):
//   LongRun        the longest consecutive run of non-Normal beats lasts
//                  less than max_run_s,
//   TotalAbnormal  the summed duration of all non-Normal beats is less than
//                  max_abnormal_fraction of the window,
//   TooFewNormals  at least min_normal_beats Normal beats remain (cubic
//                  spline feasibility).
// Rule durations are the summed rr_ms of the offending beats; both gates are
// strict inequalities.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hrvnet/error.hpp"
#include "hrvnet/rr.hpp"
#include "hrvnet/spline.hpp"

namespace hrvnet {

enum class RejectionReason { LongRun, TotalAbnormal, TooFewNormals };

inline std::string_view rejection_reason_name(RejectionReason r) {
    switch (r) {
        case RejectionReason::LongRun: return "LongRun";
        case RejectionReason::TotalAbnormal: return "TotalAbnormal";
        default: return "TooFewNormals";
    }
}

struct SegmentBeat {
    double onset_s;  // seconds from recording start
    double rr_ms;
    BeatAnnotation annotation;
};

struct Segment {
    std::string subject_id;
    std::size_t index = 0;
    double start_s = 0.0;
    double length_s = 300.0;
    std::vector<SegmentBeat> beats;
    bool accepted = false;
    std::optional<RejectionReason> rejection_reason;
};

struct AcceptanceRules {
    double max_run_s = 10.0;
    double max_abnormal_fraction = 0.20;
    std::size_t min_normal_beats = 4;
};

struct Tachogram {
    std::vector<double> samples;  // RR value in ms on an even grid
    double fs_hz = 2.0;
};

inline Tachogram make_tachogram(std::vector<double> samples, double fs_hz = 2.0) {
    require(!samples.empty() && fs_hz > 0.0, "tachogram: need samples and a positive rate");
    for (double v : samples)
        require(std::isfinite(v) && v > 0.0, "tachogram: samples must be finite and positive");
    return Tachogram{std::move(samples), fs_hz};
}

// Consecutive non-overlapping windows starting at t = 0. Acceptance is not
// judged here; see accept_segment / apply_acceptance.
inline std::vector<Segment> segment_series(const RRSeries& series, double seg_len_s = 300.0) {
    require(!series.beats.empty(), "segment_series: series is empty");
    require(seg_len_s > 0.0, "segment_series: segment length must be positive");
    const double seg_len_ms = seg_len_s * 1000.0;
    const double total_ms = series.duration_ms();
    const auto n_complete = static_cast<std::size_t>(std::floor(total_ms / seg_len_ms));
    std::vector<Segment> segments(n_complete);
    for (std::size_t i = 0; i < n_complete; ++i) {
        segments[i].subject_id = series.subject_id;
        segments[i].index = i;
        segments[i].start_s = static_cast<double>(i) * seg_len_s;
        segments[i].length_s = seg_len_s;
    }
    double onset_ms = 0.0;
    for (const auto& beat : series.beats) {
        const auto win = static_cast<std::size_t>(std::floor(onset_ms / seg_len_ms));
        if (win < n_complete)
            segments[win].beats.push_back({onset_ms / 1000.0, beat.rr_ms, beat.annotation});
        onset_ms += beat.rr_ms;
    }
    return segments;
}

struct Acceptance {
    bool accepted;
    std::optional<RejectionReason> reason;
};

inline Acceptance accept_segment(const Segment& seg, const AcceptanceRules& rules = {}) {
    double longest_run_ms = 0.0, run_ms = 0.0, abnormal_ms = 0.0;
    std::size_t normal_count = 0;
    for (const auto& beat : seg.beats) {
        if (beat.annotation == BeatAnnotation::Normal) {
            ++normal_count;
            run_ms = 0.0;
        } else {
            abnormal_ms += beat.rr_ms;
            run_ms += beat.rr_ms;
            longest_run_ms = std::max(longest_run_ms, run_ms);
        }
    }
    if (!(longest_run_ms < rules.max_run_s * 1000.0))
        return {false, RejectionReason::LongRun};
    if (!(abnormal_ms < rules.max_abnormal_fraction * seg.length_s * 1000.0))
        return {false, RejectionReason::TotalAbnormal};
    if (normal_count < rules.min_normal_beats)
        return {false, RejectionReason::TooFewNormals};
    return {true, std::nullopt};
}

inline void apply_acceptance(std::vector<Segment>& segments, const AcceptanceRules& rules = {}) {
    for (auto& seg : segments) {
        const auto result = accept_segment(seg, rules);
        seg.accepted = result.accepted;
        seg.rejection_reason = result.reason;
    }
}

// Natural cubic spline through the Normal beats' (onset, rr) knots,
// evaluated on the segment's even grid. Before the first knot and after the
// last one the nearest knot's value is held.
inline Tachogram resample_segment(const Segment& seg, double fs_hz = 2.0) {
    require(seg.accepted, "resample_segment: segment was not accepted");
    std::vector<double> x, y;
    for (const auto& beat : seg.beats) {
        if (beat.annotation != BeatAnnotation::Normal) continue;
        x.push_back(beat.onset_s);
        y.push_back(beat.rr_ms);
    }
    const NaturalCubicSpline spline(std::move(x), std::move(y));
    const auto n = static_cast<std::size_t>(std::llround(seg.length_s * fs_hz));
    std::vector<double> samples(n);
    for (std::size_t k = 0; k < n; ++k)
        samples[k] = spline(seg.start_s + static_cast<double>(k) / fs_hz);
    return make_tachogram(std::move(samples), fs_hz);
}

}  // namespace hrvnet
