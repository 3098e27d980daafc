#pragma once

// Annotated RR interval series and subject metadata: file parsing,
// serialization and the synthetic generators used by tests and demos.
//
// RR file (UTF-8 CSV):       rr_ms,annotation      annotation in {N,E,A}
// Subject file (UTF-8 CSV):  subject_id,label,age_years,sex,lvef_percent
//
// Beat k's onset time is the sum of the RR intervals before it, so the
// first beat starts at t = 0 and onsets are strictly increasing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hrvnet/csv.hpp"
#include "hrvnet/dft.hpp"
#include "hrvnet/error.hpp"
#include "hrvnet/feature_vector.hpp"
#include "hrvnet/rng.hpp"

namespace hrvnet {

enum class BeatAnnotation { Normal, Ectopic, Artifact };

struct RRBeat {
    double rr_ms;
    BeatAnnotation annotation;
    bool operator==(const RRBeat&) const = default;
};

struct RRSeries {
    std::string subject_id;
    std::vector<RRBeat> beats;
    bool operator==(const RRSeries&) const = default;

    double duration_ms() const {
        double total = 0.0;
        for (const auto& b : beats) total += b.rr_ms;
        return total;
    }
};

enum class Sex { M, F };
enum class Label { IHD, Normal };

struct SubjectMeta {
    std::string subject_id;
    Label label;
    int age_years;
    Sex sex;
    double lvef_percent;
    bool operator==(const SubjectMeta&) const = default;
};

inline char annotation_letter(BeatAnnotation a) {
    switch (a) {
        case BeatAnnotation::Normal: return 'N';
        case BeatAnnotation::Ectopic: return 'E';
        default: return 'A';
    }
}

inline std::string_view label_name(Label l) { return l == Label::IHD ? "IHD" : "Normal"; }
inline std::string_view sex_name(Sex s) { return s == Sex::M ? "M" : "F"; }

// ---------------------------------------------------------------- parsing

inline RRSeries parse_rr_file(std::istream& in, std::string subject_id = {}) {
    RRSeries series;
    series.subject_id = std::move(subject_id);
    std::string line;
    std::size_t line_no = 0;
    if (!csv::getline(in, line, line_no)) throw ParseError("empty RR file", 1);
    csv::expect_header(line, "rr_ms,annotation", line_no);
    while (csv::getline(in, line, line_no)) {
        const auto fields = csv::split(line);
        if (fields.size() != 2)
            throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
        const double rr = csv::parse_double(fields[0], line_no, "rr_ms");
        if (!(rr > 0.0) || !std::isfinite(rr))
            throw ParseError("non-positive RR interval '" + fields[0] + "'", line_no);
        BeatAnnotation ann;
        if (fields[1] == "N")
            ann = BeatAnnotation::Normal;
        else if (fields[1] == "E")
            ann = BeatAnnotation::Ectopic;
        else if (fields[1] == "A")
            ann = BeatAnnotation::Artifact;
        else
            throw ParseError("unknown annotation '" + fields[1] + "'", line_no);
        series.beats.push_back({rr, ann});
    }
    return series;
}

inline std::string serialize_rr_file(const RRSeries& series) {
    std::string out = "rr_ms,annotation\n";
    for (const auto& b : series.beats) {
        out += csv::format(b.rr_ms);
        out += ',';
        out += annotation_letter(b.annotation);
        out += '\n';
    }
    return out;
}

inline std::vector<SubjectMeta> parse_subject_meta(std::istream& in) {
    std::vector<SubjectMeta> subjects;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    if (!csv::getline(in, line, line_no)) throw ParseError("empty subject file", 1);
    csv::expect_header(line, "subject_id,label,age_years,sex,lvef_percent", line_no);
    while (csv::getline(in, line, line_no)) {
        const auto fields = csv::split(line);
        if (fields.size() != 5)
            throw ParseError("expected 5 fields, got " + std::to_string(fields.size()), line_no);
        SubjectMeta meta;
        meta.subject_id = fields[0];
        if (meta.subject_id.empty()) throw ParseError("empty subject_id", line_no);
        if (!seen.insert(meta.subject_id).second)
            throw ParseError("duplicate subject_id '" + meta.subject_id + "'", line_no);
        if (fields[1] == "IHD")
            meta.label = Label::IHD;
        else if (fields[1] == "Normal")
            meta.label = Label::Normal;
        else
            throw ParseError("unknown label '" + fields[1] + "'", line_no);
        const long age = csv::parse_long(fields[2], line_no, "age_years");
        if (age < 0) throw ParseError("negative age_years", line_no);
        meta.age_years = static_cast<int>(age);
        if (fields[3] == "M")
            meta.sex = Sex::M;
        else if (fields[3] == "F")
            meta.sex = Sex::F;
        else
            throw ParseError("unknown sex '" + fields[3] + "'", line_no);
        meta.lvef_percent = csv::parse_double(fields[4], line_no, "lvef_percent");
        if (meta.lvef_percent < 0.0 || meta.lvef_percent > 100.0)
            throw ParseError("lvef_percent outside [0, 100]", line_no);
        subjects.push_back(std::move(meta));
    }
    return subjects;
}

inline std::string serialize_subject_meta(const std::vector<SubjectMeta>& subjects) {
    std::string out = "subject_id,label,age_years,sex,lvef_percent\n";
    for (const auto& s : subjects) {
        out += s.subject_id;
        out += ',';
        out += label_name(s.label);
        out += ',';
        out += std::to_string(s.age_years);
        out += ',';
        out += sex_name(s.sex);
        out += ',';
        out += csv::format(s.lvef_percent);
        out += '\n';
    }
    return out;
}

// ------------------------------------------------------------- generators

inline RRSeries gen_constant_rr(double rr_ms, double duration_s, std::string subject_id = {}) {
    require(rr_ms > 0.0 && duration_s > 0.0, "gen_constant_rr: arguments must be positive");
    RRSeries series;
    series.subject_id = std::move(subject_id);
    const double duration_ms = duration_s * 1000.0;
    double t = 0.0;
    while (t < duration_ms) {
        series.beats.push_back({rr_ms, BeatAnnotation::Normal});
        t += rr_ms;
    }
    return series;
}

// rr_n = base + amp * sin(2*pi*f*t_n) evaluated at beat n's onset; the seed
// is part of the interface for parity with the other generators but the
// series is fully determined by the waveform parameters.
inline RRSeries gen_modulated_rr(double base_ms, double mod_amp_ms, double mod_freq_hz,
                                 double duration_s, std::uint64_t seed = 0,
                                 std::string subject_id = {}) {
    (void)seed;
    require(base_ms > mod_amp_ms && mod_amp_ms >= 0.0,
            "gen_modulated_rr: need base_ms > mod_amp_ms >= 0");
    require(mod_freq_hz > 0.0 && mod_freq_hz < 1.0,
            "gen_modulated_rr: mod_freq_hz must lie in (0, 1)");
    require(duration_s > 0.0, "gen_modulated_rr: duration_s must be positive");
    constexpr double two_pi = 6.283185307179586476925286766559;
    RRSeries series;
    series.subject_id = std::move(subject_id);
    const double duration_ms = duration_s * 1000.0;
    double t_ms = 0.0;
    while (t_ms < duration_ms) {
        const double rr = base_ms + mod_amp_ms * std::sin(two_pi * mod_freq_hz * t_ms / 1000.0);
        series.beats.push_back({rr, BeatAnnotation::Normal});
        t_ms += rr;
    }
    return series;
}

// Zero-mean sequence whose expected power spectrum falls off as
// f^(-beta_target): white Gaussian noise shaped in the frequency domain
// (bin k scaled by f_k^(-beta/2)), then transformed back.
inline std::vector<double> gen_powerlaw_series(double beta_target, std::size_t n,
                                               std::uint64_t seed) {
    require(n >= 64, "gen_powerlaw_series: need n >= 64");
    Rng rng(seed);
    const std::size_t half = n / 2;
    std::vector<std::complex<double>> spectrum(half + 1, {0.0, 0.0});
    for (std::size_t k = 1; k <= half; ++k) {
        const double f = static_cast<double>(k) / static_cast<double>(n);
        const double mag = std::pow(f, -beta_target / 2.0);
        if (n % 2 == 0 && k == half) {
            spectrum[k] = {mag * rng.normal(), 0.0};  // Nyquist bin is real
        } else {
            spectrum[k] = {mag * rng.normal() * 0.70710678118654752440,
                           mag * rng.normal() * 0.70710678118654752440};
        }
    }
    auto x = idft_half(spectrum, n);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    for (double& v : x) v -= mean;  // DC is zero by construction; remove residual rounding
    return x;
}

struct Cohort {
    std::vector<SubjectMeta> subjects;
    std::vector<FeatureVector> features;  // aligned with subjects
};

namespace detail {

struct FeatureScale {
    double mean, sd;
};

// Plausible magnitudes only; the classifier standardizes its inputs, so the
// absolute scales carry no information.
inline constexpr std::array<FeatureScale, kFeatureCount> kCohortScales = {{
    {850.0, 70.0},   // meanRR
    {50.0, 15.0},    // SDNN
    {30.0, 10.0},    // RMSSD
    {20.0, 10.0},    // NN50
    {0.05, 0.02},    // pNN50
    {600.0, 200.0},  // LF
    {300.0, 120.0},  // HF
    {0.6, 0.1},      // LFn
    {0.3, 0.08},     // HFn
    {2.0, 0.6},      // LF_HF
    {20.0, 7.0},     // SD1
    {60.0, 18.0},    // SD2
    {0.35, 0.1},     // SD1_SD2
    {1.5, 0.12},     // FD
    {-1.1, 0.25},    // beta
    {60.0, 12.0},    // age
    {0.0, 0.0},      // sex (Bernoulli, handled separately)
    {55.0, 8.0},     // lvef
}};

}  // namespace detail

// Two Gaussian clouds in feature space. Class means differ by `separation`
// standard deviations on the given signal features (HRV candidates only);
// everything else, including the clinical covariates, is drawn from the
// same distribution in both classes.
inline Cohort gen_two_class_cohort(int n_per_class, double separation, std::uint64_t seed,
                                   std::vector<FeatureId> signal_features = {FeatureId::Sdnn,
                                                                             FeatureId::Rmssd}) {
    require(n_per_class >= 4, "gen_two_class_cohort: need n_per_class >= 4");
    require(separation >= 0.0, "gen_two_class_cohort: separation must be >= 0");
    for (FeatureId id : signal_features)
        require(static_cast<int>(id) < kHrvFeatureCount,
                "gen_two_class_cohort: signal features must be HRV parameters");
    Rng rng(seed);
    Cohort cohort;
    int counter = 0;
    for (const Label label : {Label::IHD, Label::Normal}) {
        for (int i = 0; i < n_per_class; ++i) {
            FeatureVector fv{};
            for (int f = 0; f < kFeatureCount; ++f) {
                const auto id = static_cast<FeatureId>(f);
                if (id == FeatureId::Sex) {
                    fv[f] = rng.uniform() < 0.5 ? 1.0 : 0.0;
                    continue;
                }
                const auto [mean, sd] = detail::kCohortScales[f];
                double value = mean + sd * rng.normal();
                if (label == Label::IHD &&
                    std::find(signal_features.begin(), signal_features.end(), id) !=
                        signal_features.end())
                    value += separation * sd;
                if (id == FeatureId::Age) value = std::max(0.0, std::round(value));
                if (id == FeatureId::Lvef) value = std::clamp(value, 0.0, 100.0);
                fv[f] = value;
            }
            SubjectMeta meta;
            meta.subject_id = "s" + std::to_string(++counter);
            meta.label = label;
            meta.age_years = static_cast<int>(*fv[static_cast<int>(FeatureId::Age)]);
            meta.sex = *fv[static_cast<int>(FeatureId::Sex)] > 0.5 ? Sex::M : Sex::F;
            meta.lvef_percent = *fv[static_cast<int>(FeatureId::Lvef)];
            cohort.subjects.push_back(std::move(meta));
            cohort.features.push_back(fv);
        }
    }
    return cohort;
}

}  // namespace hrvnet
