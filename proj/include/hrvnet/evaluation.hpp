#pragma once

// Classifier evaluation: confusion matrix with IHD as the positive class,
// the ACC/SEN/SPE/PRE metrics, and the ROC curve with trapezoidal AUC.
//
// The ROC sweeps thresholds over the distinct scores in descending order,
// predicting IHD when score >= threshold; tied scores collapse into a single
// point. With that convention the trapezoidal area equals the Mann-Whitney
// statistic (ties counted as 1/2) exactly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hrvnet/csv.hpp"
#include "hrvnet/dataset.hpp"
#include "hrvnet/error.hpp"
#include "hrvnet/mlp.hpp"

namespace hrvnet {

struct ConfusionMatrix {
    long tp = 0, fp = 0, fn = 0, tn = 0;
    long total() const { return tp + fp + fn + tn; }
};

struct MetricsReport {
    std::optional<double> acc, sen, spe, pre;  // unset on a zero denominator
};

struct ROCCurve {
    std::vector<std::pair<double, double>> points;  // (fpr, tpr), staircase order
    double auc = 0.0;
};

inline ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted) {
    require(truth.size() == predicted.size(), "confusion: length mismatch");
    require(!truth.empty(), "confusion: empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool pos = truth[i] == Label::IHD;
        const bool hit = predicted[i] == Label::IHD;
        if (pos && hit) ++cm.tp;
        else if (pos) ++cm.fn;
        else if (hit) ++cm.fp;
        else ++cm.tn;
    }
    return cm;
}

inline MetricsReport metrics(const ConfusionMatrix& cm) {
    require(cm.total() > 0, "metrics: empty confusion matrix");
    MetricsReport r;
    const auto ratio = [](long num, long den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    r.acc = ratio(cm.tp + cm.tn, cm.total());
    r.sen = ratio(cm.tp, cm.tp + cm.fn);
    r.spe = ratio(cm.tn, cm.tn + cm.fp);
    r.pre = ratio(cm.tp, cm.tp + cm.fp);
    return r;
}

inline ROCCurve roc(std::span<const Label> labels, std::span<const double> scores) {
    require(labels.size() == scores.size(), "roc: length mismatch");
    require(!labels.empty(), "roc: empty input");
    long n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        require(std::isfinite(scores[i]), "roc: non-finite score");
        (labels[i] == Label::IHD ? n_pos : n_neg)++;
    }
    require(n_pos > 0 && n_neg > 0, "roc: both classes must be present");

    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    ROCCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    long tp = 0, fp = 0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        while (i < order.size() && scores[order[i]] == threshold) {
            (labels[order[i]] == Label::IHD ? tp : fp)++;
            ++i;
        }
        const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
        const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
        curve.points.emplace_back(fpr, tpr);
        curve.auc += (fpr - prev_fpr) * (tpr + prev_tpr) * 0.5;
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    return curve;  // final point is (1, 1) once every sample is past threshold
}

struct EvaluationReport {
    ConfusionMatrix cm;
    MetricsReport metrics;
    ROCCurve roc;
};

inline EvaluationReport evaluate(const MLPModel& model, const LabeledDataset& ds) {
    require(!ds.rows.empty(), "evaluate: empty dataset");
    for (FeatureId id : model.feature_subset)
        require(std::find(ds.feature_subset.begin(), ds.feature_subset.end(), id) !=
                    ds.feature_subset.end(),
                "evaluate: dataset does not expose feature " + std::string(feature_name(id)));
    const auto samples = make_samples(ds, model.feature_subset);
    std::vector<Label> truth, predicted;
    std::vector<double> scores;
    for (const auto& s : samples) {
        const auto p = predict(model, s.x);
        truth.push_back(s.label);
        predicted.push_back(p.label);
        scores.push_back(p.score);
    }
    EvaluationReport report;
    report.cm = confusion(truth, predicted);
    report.metrics = metrics(report.cm);
    report.roc = roc(truth, scores);
    return report;
}

// ----------------------------------------------------------------- output

inline std::string roc_csv(const ROCCurve& curve) {
    std::string out = "fpr,tpr\n";
    for (const auto& [fpr, tpr] : curve.points) {
        out += csv::format(fpr);
        out += ',';
        out += csv::format(tpr);
        out += '\n';
    }
    return out;
}

inline nlohmann::json evaluation_to_json(const EvaluationReport& report) {
    nlohmann::json j;
    j["confusion"] = {{"tp", report.cm.tp}, {"fp", report.cm.fp},
                      {"fn", report.cm.fn}, {"tn", report.cm.tn}};
    const auto metric = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    j["metrics"] = {{"acc", metric(report.metrics.acc)},
                    {"sen", metric(report.metrics.sen)},
                    {"spe", metric(report.metrics.spe)},
                    {"pre", metric(report.metrics.pre)}};
    j["auc"] = report.roc.auc;
    return j;
}

}  // namespace hrvnet
