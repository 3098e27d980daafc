#pragma once

// One-hidden-layer feed-forward network with sigmoid activations on both
// layers and two output nodes (IHD, Normal). Training is full-batch
// gradient descent with momentum on the summed squared error against
// one-hot targets; it stops when the SSE drops below the threshold or the
// epoch budget is exhausted. Everything is deterministic given the
// initialization, the data and the config.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrvnet/dataset.hpp"
#include "hrvnet/error.hpp"
#include "hrvnet/feature_vector.hpp"
#include "hrvnet/rng.hpp"

namespace hrvnet {

struct MLPModel {
    int n_in = 0;
    int n_hidden = 0;                    // output layer fixed at 2 nodes
    std::vector<double> w1, b1, w2, b2;  // w1: n_hidden x n_in row-major, w2: 2 x n_hidden
    std::vector<FeatureId> feature_subset;
    Standardization standardization;
};

struct TrainConfig {
    double learning_rate = 0.1;
    double momentum = 0.9;
    int max_epochs = 1000;
    double sse_threshold = 0.05;
    double init_scale = 0.5;
    std::uint64_t seed = 0;
};

struct TrainOutcome {
    MLPModel model;
    int epochs_run = 0;
    double final_sse = 0.0;
    bool converged = false;
    std::vector<double> sse_history;  // SSE before any update, then after each epoch
};

struct Sample {
    std::vector<double> x;
    Label label;
};

inline std::vector<Sample> make_samples(const LabeledDataset& ds,
                                        std::span<const FeatureId> order) {
    std::vector<Sample> out;
    out.reserve(ds.rows.size());
    for (const auto& row : ds.rows) {
        Sample s;
        s.label = row.label;
        s.x.reserve(order.size());
        for (FeatureId id : order) {
            const auto& v = row.features[static_cast<int>(id)];
            require(v.has_value(), "make_samples: row '" + row.subject_id +
                                       "' lacks feature " + std::string(feature_name(id)));
            s.x.push_back(*v);
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline std::array<double, 2> target_for(Label label) {
    return label == Label::IHD ? std::array<double, 2>{1.0, 0.0}
                               : std::array<double, 2>{0.0, 1.0};
}

// Parameters are drawn uniformly from [-init_scale, init_scale] in a fixed
// order (w1 row-major, b1, w2 row-major, b2) so a seed pins the model.
inline MLPModel init_model(int n_in, int n_hidden, std::vector<FeatureId> feature_subset,
                           std::uint64_t seed, double init_scale = 0.5) {
    require(n_in >= 1 && n_hidden >= 1, "init_model: layer sizes must be positive");
    require(init_scale >= 0.0, "init_model: init_scale must be >= 0");
    MLPModel m;
    m.n_in = n_in;
    m.n_hidden = n_hidden;
    m.feature_subset = std::move(feature_subset);
    Rng rng(seed);
    const auto draw = [&rng, init_scale]() { return rng.uniform(-init_scale, init_scale); };
    m.w1.resize(static_cast<std::size_t>(n_hidden) * static_cast<std::size_t>(n_in));
    for (auto& w : m.w1) w = draw();
    m.b1.resize(static_cast<std::size_t>(n_hidden));
    for (auto& w : m.b1) w = draw();
    m.w2.resize(2 * static_cast<std::size_t>(n_hidden));
    for (auto& w : m.w2) w = draw();
    m.b2.resize(2);
    for (auto& w : m.b2) w = draw();
    return m;
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

namespace detail {

inline void forward_layers(const MLPModel& m, std::span<const double> x,
                           std::vector<double>& hidden, std::array<double, 2>& out) {
    hidden.resize(static_cast<std::size_t>(m.n_hidden));
    for (int h = 0; h < m.n_hidden; ++h) {
        double z = m.b1[static_cast<std::size_t>(h)];
        const double* row = m.w1.data() + static_cast<std::size_t>(h) * static_cast<std::size_t>(m.n_in);
        for (int i = 0; i < m.n_in; ++i) z += row[i] * x[static_cast<std::size_t>(i)];
        hidden[static_cast<std::size_t>(h)] = sigmoid(z);
    }
    for (int o = 0; o < 2; ++o) {
        double z = m.b2[static_cast<std::size_t>(o)];
        const double* row = m.w2.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(m.n_hidden);
        for (int h = 0; h < m.n_hidden; ++h) z += row[h] * hidden[static_cast<std::size_t>(h)];
        out[static_cast<std::size_t>(o)] = sigmoid(z);
    }
}

}  // namespace detail

// Returns (o_ihd, o_normal), each in (0, 1).
inline std::array<double, 2> forward(const MLPModel& m, std::span<const double> x) {
    require(static_cast<int>(x.size()) == m.n_in, "forward: input length mismatch");
    for (double v : x) require(std::isfinite(v), "forward: non-finite input");
    std::vector<double> hidden;
    std::array<double, 2> out{};
    detail::forward_layers(m, x, hidden, out);
    return out;
}

// Summed squared error over all samples and both output nodes.
inline double sse(const MLPModel& m, std::span<const Sample> data) {
    require(!data.empty(), "sse: empty data");
    double total = 0.0;
    std::vector<double> hidden;
    std::array<double, 2> out{};
    for (const auto& s : data) {
        require(static_cast<int>(s.x.size()) == m.n_in, "sse: input length mismatch");
        detail::forward_layers(m, s.x, hidden, out);
        const auto t = target_for(s.label);
        for (int o = 0; o < 2; ++o) {
            const double e = out[static_cast<std::size_t>(o)] - t[static_cast<std::size_t>(o)];
            total += e * e;
        }
    }
    return total;
}

struct Gradients {
    std::vector<double> w1, b1, w2, b2;
};

// Exact analytic gradient of sse() by backpropagation.
inline Gradients gradient(const MLPModel& m, std::span<const Sample> data) {
    require(!data.empty(), "gradient: empty data");
    Gradients g;
    g.w1.assign(m.w1.size(), 0.0);
    g.b1.assign(m.b1.size(), 0.0);
    g.w2.assign(m.w2.size(), 0.0);
    g.b2.assign(m.b2.size(), 0.0);
    std::vector<double> hidden;
    std::array<double, 2> out{};
    std::vector<double> delta_h(static_cast<std::size_t>(m.n_hidden));
    for (const auto& s : data) {
        require(static_cast<int>(s.x.size()) == m.n_in, "gradient: input length mismatch");
        detail::forward_layers(m, s.x, hidden, out);
        const auto t = target_for(s.label);
        std::array<double, 2> delta_o{};
        for (int o = 0; o < 2; ++o) {
            const double y = out[static_cast<std::size_t>(o)];
            delta_o[static_cast<std::size_t>(o)] =
                2.0 * (y - t[static_cast<std::size_t>(o)]) * y * (1.0 - y);
        }
        for (int h = 0; h < m.n_hidden; ++h) {
            double back = 0.0;
            for (int o = 0; o < 2; ++o)
                back += delta_o[static_cast<std::size_t>(o)] *
                        m.w2[static_cast<std::size_t>(o) * static_cast<std::size_t>(m.n_hidden) +
                             static_cast<std::size_t>(h)];
            const double y = hidden[static_cast<std::size_t>(h)];
            delta_h[static_cast<std::size_t>(h)] = back * y * (1.0 - y);
        }
        for (int o = 0; o < 2; ++o) {
            const double d = delta_o[static_cast<std::size_t>(o)];
            double* row = g.w2.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(m.n_hidden);
            for (int h = 0; h < m.n_hidden; ++h) row[h] += d * hidden[static_cast<std::size_t>(h)];
            g.b2[static_cast<std::size_t>(o)] += d;
        }
        for (int h = 0; h < m.n_hidden; ++h) {
            const double d = delta_h[static_cast<std::size_t>(h)];
            double* row = g.w1.data() + static_cast<std::size_t>(h) * static_cast<std::size_t>(m.n_in);
            for (int i = 0; i < m.n_in; ++i) row[i] += d * s.x[static_cast<std::size_t>(i)];
            g.b1[static_cast<std::size_t>(h)] += d;
        }
    }
    return g;
}

inline TrainOutcome train(const MLPModel& init, std::span<const Sample> data,
                          const TrainConfig& cfg) {
    require(!data.empty(), "train: empty data");
    require(cfg.learning_rate > 0.0, "train: learning_rate must be positive");
    require(cfg.momentum >= 0.0 && cfg.momentum < 1.0, "train: momentum must be in [0, 1)");
    require(cfg.max_epochs >= 0, "train: max_epochs must be >= 0");
    require(cfg.sse_threshold > 0.0, "train: sse_threshold must be positive");

    TrainOutcome outcome;
    outcome.model = init;
    MLPModel& m = outcome.model;
    Gradients velocity;
    velocity.w1.assign(m.w1.size(), 0.0);
    velocity.b1.assign(m.b1.size(), 0.0);
    velocity.w2.assign(m.w2.size(), 0.0);
    velocity.b2.assign(m.b2.size(), 0.0);

    double current = sse(m, data);
    if (!std::isfinite(current)) throw TrainDivergence(0);
    outcome.sse_history.push_back(current);
    int epoch = 0;
    while (current >= cfg.sse_threshold && epoch < cfg.max_epochs) {
        const auto g = gradient(m, data);
        const auto step = [&cfg](std::vector<double>& theta, std::vector<double>& v,
                                 const std::vector<double>& grad) {
            for (std::size_t i = 0; i < theta.size(); ++i) {
                v[i] = cfg.momentum * v[i] - cfg.learning_rate * grad[i];
                theta[i] += v[i];
            }
        };
        step(m.w1, velocity.w1, g.w1);
        step(m.b1, velocity.b1, g.b1);
        step(m.w2, velocity.w2, g.w2);
        step(m.b2, velocity.b2, g.b2);
        ++epoch;
        current = sse(m, data);
        if (!std::isfinite(current)) throw TrainDivergence(epoch);
        outcome.sse_history.push_back(current);
    }
    outcome.epochs_run = epoch;
    outcome.final_sse = current;
    outcome.converged = current < cfg.sse_threshold;
    return outcome;
}

struct Prediction {
    Label label;
    double score;  // the IHD output node
};

// Ties go to Normal.
inline Prediction predict(const MLPModel& m, std::span<const double> x) {
    const auto out = forward(m, x);
    return {out[0] > out[1] ? Label::IHD : Label::Normal, out[0]};
}

// ------------------------------------------------------- JSON persistence

inline nlohmann::json standardization_to_json(const Standardization& st) {
    nlohmann::json j;
    j["features"] = nlohmann::json::array();
    for (std::size_t i = 0; i < st.ids.size(); ++i)
        j["features"].push_back({{"name", std::string(feature_name(st.ids[i]))},
                                 {"mean", st.mean[i]},
                                 {"stddev", st.stddev[i]}});
    return j;
}

inline Standardization standardization_from_json(const nlohmann::json& j) {
    Standardization st;
    for (const auto& item : j.at("features")) {
        const auto id = feature_from_name(item.at("name").get<std::string>());
        require(id.has_value(), "standardization: unknown feature name");
        st.ids.push_back(*id);
        st.mean.push_back(item.at("mean").get<double>());
        st.stddev.push_back(item.at("stddev").get<double>());
    }
    return st;
}

inline nlohmann::json model_to_json(const MLPModel& m) {
    nlohmann::json j;
    j["layer_sizes"] = {m.n_in, m.n_hidden, 2};
    const auto matrix = [](const std::vector<double>& w, int rows, int cols) {
        nlohmann::json rows_json = nlohmann::json::array();
        for (int r = 0; r < rows; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < cols; ++c)
                row.push_back(w[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                                static_cast<std::size_t>(c)]);
            rows_json.push_back(std::move(row));
        }
        return rows_json;
    };
    j["weights"] = {matrix(m.w1, m.n_hidden, m.n_in), matrix(m.w2, 2, m.n_hidden)};
    j["biases"] = {m.b1, m.b2};
    j["feature_subset"] = nlohmann::json::array();
    for (FeatureId id : m.feature_subset)
        j["feature_subset"].push_back(std::string(feature_name(id)));
    j["standardization"] = standardization_to_json(m.standardization);
    return j;
}

inline std::string save_model(const MLPModel& m) { return model_to_json(m).dump(2) + "\n"; }

inline MLPModel model_from_json(const nlohmann::json& j) {
    MLPModel m;
    const auto sizes = j.at("layer_sizes");
    require(sizes.is_array() && sizes.size() == 3 && sizes[2].get<int>() == 2,
            "model: layer_sizes must be [n_in, n_hidden, 2]");
    m.n_in = sizes[0].get<int>();
    m.n_hidden = sizes[1].get<int>();
    require(m.n_in >= 1 && m.n_hidden >= 1, "model: layer sizes must be positive");
    const auto read_matrix = [](const nlohmann::json& rows_json, int rows, int cols,
                                std::vector<double>& w, const char* what) {
        require(rows_json.is_array() && static_cast<int>(rows_json.size()) == rows,
                std::string("model: bad row count in ") + what);
        w.clear();
        w.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
        for (const auto& row : rows_json) {
            require(row.is_array() && static_cast<int>(row.size()) == cols,
                    std::string("model: bad column count in ") + what);
            for (const auto& v : row) w.push_back(v.get<double>());
        }
    };
    const auto& weights = j.at("weights");
    require(weights.is_array() && weights.size() == 2, "model: weights must hold 2 matrices");
    read_matrix(weights[0], m.n_hidden, m.n_in, m.w1, "w1");
    read_matrix(weights[1], 2, m.n_hidden, m.w2, "w2");
    const auto& biases = j.at("biases");
    require(biases.is_array() && biases.size() == 2, "model: biases must hold 2 vectors");
    m.b1 = biases[0].get<std::vector<double>>();
    m.b2 = biases[1].get<std::vector<double>>();
    require(static_cast<int>(m.b1.size()) == m.n_hidden && m.b2.size() == 2,
            "model: bias shapes inconsistent with layer_sizes");
    for (const auto& name : j.at("feature_subset")) {
        const auto id = feature_from_name(name.get<std::string>());
        require(id.has_value(), "model: unknown feature name in subset");
        m.feature_subset.push_back(*id);
    }
    require(static_cast<int>(m.feature_subset.size()) == m.n_in,
            "model: feature_subset length must equal n_in");
    if (j.contains("standardization"))
        m.standardization = standardization_from_json(j.at("standardization"));
    for (const auto* params : {&m.w1, &m.b1, &m.w2, &m.b2})
        for (double v : *params) require(std::isfinite(v), "model: non-finite parameter");
    return m;
}

inline MLPModel load_model(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("model: invalid JSON: ") + e.what());
    }
    try {
        return model_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("model: schema mismatch: ") + e.what());
    }
}

}  // namespace hrvnet
