#pragma once

// The 18 candidate classifier inputs: 15 HRV parameters plus the clinical
// covariates age, sex, lvef. Order here is the canonical order used for CSV
// columns, model input layout and subset enumeration.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hrvnet/error.hpp"

namespace hrvnet {

enum class FeatureId : int {
    MeanRR = 0,
    Sdnn,
    Rmssd,
    Nn50,
    Pnn50,
    Lf,
    Hf,
    Lfn,
    Hfn,
    LfHf,
    Sd1,
    Sd2,
    Sd1Sd2,
    Fd,
    Beta,
    Age,
    Sex,
    Lvef,
};

inline constexpr int kFeatureCount = 18;
inline constexpr int kHrvFeatureCount = 15;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "meanRR", "SDNN", "RMSSD", "NN50", "pNN50", "LF",   "HF",  "LFn",  "HFn",
    "LF_HF",  "SD1",  "SD2",   "SD1_SD2", "FD", "beta", "age", "sex", "lvef",
};

inline std::string_view feature_name(FeatureId id) {
    return kFeatureNames[static_cast<int>(id)];
}

inline std::optional<FeatureId> feature_from_name(std::string_view name) {
    for (int i = 0; i < kFeatureCount; ++i)
        if (kFeatureNames[i] == name) return static_cast<FeatureId>(i);
    return std::nullopt;
}

// Undefined entries (e.g. a ratio whose denominator was zero in every
// segment) stay unset rather than being replaced by a substitute number.
using FeatureVector = std::array<std::optional<double>, kFeatureCount>;

inline std::vector<FeatureId> hrv_feature_ids() {
    std::vector<FeatureId> ids;
    ids.reserve(kHrvFeatureCount);
    for (int i = 0; i < kHrvFeatureCount; ++i) ids.push_back(static_cast<FeatureId>(i));
    return ids;
}

inline std::vector<FeatureId> clinical_feature_ids() {
    return {FeatureId::Age, FeatureId::Sex, FeatureId::Lvef};
}

inline std::string join_feature_names(const std::vector<FeatureId>& ids,
                                      std::string_view sep = "+") {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += sep;
        out += feature_name(ids[i]);
    }
    return out;
}

}  // namespace hrvnet
