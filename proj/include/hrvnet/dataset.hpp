#pragma once

// Assembles per-subject feature vectors with the clinical covariates,
// splits subjects 75/25 stratified by class, and standardizes features with
// train-side statistics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hrvnet/csv.hpp"
#include "hrvnet/error.hpp"
#include "hrvnet/feature_vector.hpp"
#include "hrvnet/features.hpp"
#include "hrvnet/rng.hpp"
#include "hrvnet/rr.hpp"

namespace hrvnet {

struct DatasetRow {
    std::string subject_id;
    FeatureVector features;
    Label label;
};

// feature_subset lists the features exposed as model inputs (canonical
// order); every row defines all of them. Rows failing that are filtered out
// by expose() and reported to the caller.
struct LabeledDataset {
    std::vector<DatasetRow> rows;
    std::vector<FeatureId> feature_subset;

    std::size_t count(Label l) const {
        std::size_t n = 0;
        for (const auto& r : rows) n += (r.label == l) ? 1 : 0;
        return n;
    }
};

inline std::vector<FeatureId> canonical_subset(std::vector<FeatureId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

struct ExposeResult {
    LabeledDataset dataset;
    std::vector<std::string> dropped;  // subject ids with an undefined exposed feature
};

inline ExposeResult expose(const LabeledDataset& ds, std::vector<FeatureId> subset) {
    ExposeResult out;
    out.dataset.feature_subset = canonical_subset(std::move(subset));
    for (const auto& row : ds.rows) {
        const bool complete = std::all_of(
            out.dataset.feature_subset.begin(), out.dataset.feature_subset.end(),
            [&](FeatureId id) { return row.features[static_cast<int>(id)].has_value(); });
        if (complete)
            out.dataset.rows.push_back(row);
        else
            out.dropped.push_back(row.subject_id);
    }
    return out;
}

// Joins subject metadata with the aggregated HRV values. Sex is encoded
// M -> 1, F -> 0. Every subject must have aggregates.
inline LabeledDataset assemble(const std::vector<SubjectMeta>& subjects,
                               const std::map<std::string, HrvValues>& hrv) {
    LabeledDataset ds;
    std::set<std::string> seen;
    for (const auto& meta : subjects) {
        require(seen.insert(meta.subject_id).second,
                "assemble: duplicate subject_id '" + meta.subject_id + "'");
        const auto it = hrv.find(meta.subject_id);
        require(it != hrv.end(), "assemble: subject '" + meta.subject_id + "' has no aggregates");
        DatasetRow row;
        row.subject_id = meta.subject_id;
        row.label = meta.label;
        for (int f = 0; f < kHrvFeatureCount; ++f) row.features[f] = it->second[f];
        row.features[static_cast<int>(FeatureId::Age)] = static_cast<double>(meta.age_years);
        row.features[static_cast<int>(FeatureId::Sex)] = meta.sex == Sex::M ? 1.0 : 0.0;
        row.features[static_cast<int>(FeatureId::Lvef)] = meta.lvef_percent;
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

struct Standardization {
    std::vector<FeatureId> ids;
    std::vector<double> mean, stddev;  // aligned with ids

    std::optional<std::size_t> index_of(FeatureId id) const {
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (ids[i] == id) return i;
        return std::nullopt;
    }
};

struct SplitDataset {
    LabeledDataset train, validation;
    std::uint64_t seed = 0;
    Standardization standardization;  // empty until standardize()
};

// Stratified random split. Per class the train count is round(frac * size),
// clamped so both sides keep at least one subject; membership is a seeded
// shuffle and row order within each side follows the input order.
inline SplitDataset split(const LabeledDataset& ds, double train_frac = 0.75,
                          std::uint64_t seed = 0) {
    require(train_frac > 0.0 && train_frac < 1.0, "split: train_frac must be in (0, 1)");
    for (const Label l : {Label::IHD, Label::Normal})
        require(ds.count(l) >= 2, "split: need at least 2 subjects per class");

    SplitDataset out;
    out.seed = seed;
    out.train.feature_subset = ds.feature_subset;
    out.validation.feature_subset = ds.feature_subset;

    Rng rng(seed);
    std::vector<char> in_train(ds.rows.size(), 0);
    for (const Label label : {Label::IHD, Label::Normal}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < ds.rows.size(); ++i)
            if (ds.rows[i].label == label) members.push_back(i);
        const auto n = members.size();
        const auto want = static_cast<std::size_t>(std::lround(train_frac * static_cast<double>(n)));
        const std::size_t k = std::clamp<std::size_t>(want, 1, n - 1);
        rng.shuffle(members);
        for (std::size_t i = 0; i < k; ++i) in_train[members[i]] = 1;
    }
    for (std::size_t i = 0; i < ds.rows.size(); ++i)
        (in_train[i] ? out.train : out.validation).rows.push_back(ds.rows[i]);
    return out;
}

// Z-scores each listed feature with train-side statistics (population
// divisor) and applies the same transform to the validation side. Values
// are scaled wherever defined; statistics come from the train rows where
// the feature is defined.
inline SplitDataset standardize(const SplitDataset& sd, std::vector<FeatureId> features = {}) {
    if (features.empty()) features = sd.train.feature_subset;
    features = canonical_subset(std::move(features));
    require(!sd.train.rows.empty(), "standardize: empty train side");

    SplitDataset out = sd;
    for (FeatureId id : features) {
        const int f = static_cast<int>(id);
        double mean = 0.0;
        std::size_t n = 0;
        for (const auto& row : sd.train.rows) {
            if (!row.features[f]) continue;
            mean += *row.features[f];
            ++n;
        }
        require(n > 0, std::string("standardize: feature ") + std::string(feature_name(id)) +
                           " undefined on the whole train side");
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& row : sd.train.rows) {
            if (!row.features[f]) continue;
            var += (*row.features[f] - mean) * (*row.features[f] - mean);
        }
        var /= static_cast<double>(n);
        const double stddev = std::sqrt(var);
        require(stddev > 0.0, std::string("standardize: zero-variance feature ") +
                                  std::string(feature_name(id)) + " on the train side");
        for (auto* side : {&out.train, &out.validation})
            for (auto& row : side->rows)
                if (row.features[f]) row.features[f] = (*row.features[f] - mean) / stddev;
        out.standardization.ids.push_back(id);
        out.standardization.mean.push_back(mean);
        out.standardization.stddev.push_back(stddev);
    }
    return out;
}

inline double destandardize_value(const Standardization& st, FeatureId id, double z) {
    const auto idx = st.index_of(id);
    require(idx.has_value(), "destandardize: feature was not standardized");
    return z * st.stddev[*idx] + st.mean[*idx];
}

// ---------------------------------------------------- feature table (CSV)

inline constexpr std::string_view kFeatureCsvHeader =
    "subject_id,meanRR,SDNN,RMSSD,NN50,pNN50,LF,HF,LFn,HFn,LF_HF,SD1,SD2,SD1_SD2,FD,beta";

struct FeatureTableRow {
    std::string subject_id;
    HrvValues values;
};

inline std::string write_feature_csv(const std::vector<FeatureTableRow>& rows) {
    std::string out(kFeatureCsvHeader);
    out += '\n';
    for (const auto& row : rows) {
        out += row.subject_id;
        for (int f = 0; f < kHrvFeatureCount; ++f) {
            out += ',';
            out += csv::format(row.values[f]);
        }
        out += '\n';
    }
    return out;
}

inline std::vector<FeatureTableRow> read_feature_csv(std::istream& in) {
    std::vector<FeatureTableRow> rows;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    if (!csv::getline(in, line, line_no)) throw ParseError("empty feature table", 1);
    csv::expect_header(line, kFeatureCsvHeader, line_no);
    while (csv::getline(in, line, line_no)) {
        const auto fields = csv::split(line);
        if (fields.size() != 1 + kHrvFeatureCount)
            throw ParseError("expected " + std::to_string(1 + kHrvFeatureCount) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        FeatureTableRow row;
        row.subject_id = fields[0];
        if (row.subject_id.empty()) throw ParseError("empty subject_id", line_no);
        if (!seen.insert(row.subject_id).second)
            throw ParseError("duplicate subject_id '" + row.subject_id + "'", line_no);
        for (int f = 0; f < kHrvFeatureCount; ++f) {
            const auto& cell = fields[1 + static_cast<std::size_t>(f)];
            if (cell.empty()) continue;  // undefined marker
            row.values[f] =
                csv::parse_double(cell, line_no, std::string(feature_name(static_cast<FeatureId>(f))).c_str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hrvnet
