// Copyright 2026 The qvc Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qvc/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <thread>

#include "json.hpp"

#include "qvc/errors.hpp"

namespace qvc {

namespace {

int argmax_lowest(std::span<const double> values) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(values.size()); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

void check_batch(const Matrix &samples, std::span<const int> labels) {
    if (samples.rows == 0) {
        throw ContractError("batch is empty");
    }
    if (samples.rows != labels.size()) {
        throw ContractError("batch has " + std::to_string(samples.rows) +
                            " samples but " + std::to_string(labels.size()) +
                            " labels");
    }
    for (int y : labels) {
        if (y < 0 || y >= kNumClasses) {
            throw ContractError("label " + std::to_string(y) +
                                " outside [0, " +
                                std::to_string(kNumClasses) + ")");
        }
    }
}

/// Run fn(sample_index) over [0, n) on up to `threads` workers. Each index
/// is processed exactly once; callers store results by index so the final
/// reduction order never depends on scheduling.
void parallel_samples(std::size_t n, int threads,
                      const std::function<void(std::size_t)> &fn) {
    const int workers =
        std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) {
                        error = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto &t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace

void validate_model_config(const ModelConfig &config) {
    if (static_cast<int>(config.readout_qubits.size()) != kNumClasses) {
        throw ContractError("model needs exactly " +
                            std::to_string(kNumClasses) + " readout qubits");
    }
    std::set<int> distinct(config.readout_qubits.begin(),
                           config.readout_qubits.end());
    if (distinct.size() != config.readout_qubits.size()) {
        throw ContractError("readout qubits must be distinct");
    }
    for (int q : config.readout_qubits) {
        if (q < 0 || q >= config.ansatz.n_qubits) {
            throw ContractError("readout qubit " + std::to_string(q) +
                                " outside the " +
                                std::to_string(config.ansatz.n_qubits) +
                                "-qubit register");
        }
    }
    if (!(config.learning_rate >= 0.0) ||
        !std::isfinite(config.learning_rate)) {
        throw ContractError("learning rate must be finite and >= 0");
    }
    if (config.epochs < 1) {
        throw ContractError("epochs must be >= 1");
    }
}

int derive_qubit_count(std::size_t n_features) {
    if (n_features == 0) {
        throw ContractError("cannot derive qubit count for zero features");
    }
    int n = 0;
    while ((std::size_t{1} << n) < n_features) ++n;
    n = std::max(n, kNumClasses); // one readout qubit per class
    if (n > kMaxQubits) {
        throw CapacityError(std::to_string(n_features) +
                            " features need more than " +
                            std::to_string(kMaxQubits) + " qubits");
    }
    return n;
}

std::vector<double> softmax(std::span<const double> logits) {
    if (logits.empty()) {
        throw ContractError("softmax of empty logits");
    }
    const double shift = *std::max_element(logits.begin(), logits.end());
    std::vector<double> probs(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        probs[i] = std::exp(logits[i] - shift);
        total += probs[i];
    }
    for (auto &p : probs) p /= total;
    return probs;
}

double cross_entropy(std::span<const double> probs, int label) {
    if (probs.size() != kNumClasses) {
        throw ContractError("expected " + std::to_string(kNumClasses) +
                            " class probabilities, got " +
                            std::to_string(probs.size()));
    }
    if (label < 0 || label >= kNumClasses) {
        throw ContractError("label " + std::to_string(label) +
                            " outside [0, " + std::to_string(kNumClasses) +
                            ")");
    }
    if (!(probs[label] > 0.0)) {
        throw DegenerateInputError(
            "cross_entropy: probability of the true class is not positive");
    }
    return -std::log(probs[label]);
}

std::vector<double> predict_proba(const ParameterVector &theta,
                                  const ModelConfig &config,
                                  const CircuitSpec &circuit,
                                  std::span<const double> sample) {
    validate_model_config(config);
    const StateVector input =
        amplitude_encode(sample, config.ansatz.n_qubits);
    const auto result = forward(circuit, theta, input, config.readout_qubits);
    return softmax(result.expectations);
}

int predict(const ParameterVector &theta, const ModelConfig &config,
            const CircuitSpec &circuit, std::span<const double> sample) {
    const auto probs = predict_proba(theta, config, circuit, sample);
    return argmax_lowest(probs);
}

BatchGradient cost_gradient(const ParameterVector &theta,
                            const ModelConfig &config,
                            const CircuitSpec &circuit, const Matrix &samples,
                            std::span<const int> labels, int threads) {
    validate_model_config(config);
    check_batch(samples, labels);

    const std::size_t n = samples.rows;
    const std::size_t n_params = theta.size();
    std::vector<double> costs(n, 0.0);
    std::vector<int> hits(n, 0);
    Matrix per_sample_grad(n, n_params);

    parallel_samples(n, threads, [&](std::size_t s) {
        const StateVector input =
            amplitude_encode(samples.row(s), config.ansatz.n_qubits);
        std::vector<double> logits;
        const GradientMatrix jac = grad_adjoint(circuit, theta, input,
                                                config.readout_qubits, &logits);
        const auto probs = softmax(logits);
        costs[s] = cross_entropy(probs, labels[s]);
        hits[s] = argmax_lowest(probs) == labels[s] ? 1 : 0;
        auto grad_row = per_sample_grad.row(s);
        for (int j = 0; j < kNumClasses; ++j) {
            const double delta =
                probs[j] - (j == labels[s] ? 1.0 : 0.0); // dC/de_j
            for (std::size_t k = 0; k < n_params; ++k) {
                grad_row[k] += delta * jac.at(j, k);
            }
        }
    });

    BatchGradient out;
    out.grad.assign(n_params, 0.0);
    for (std::size_t s = 0; s < n; ++s) { // fixed reduction order
        out.cost += costs[s];
        out.n_correct += hits[s];
        const auto row = per_sample_grad.row(s);
        for (std::size_t k = 0; k < n_params; ++k) out.grad[k] += row[k];
    }
    out.cost /= static_cast<double>(n);
    for (auto &g : out.grad) g /= static_cast<double>(n);
    return out;
}

EvalResult evaluate_batch(const ParameterVector &theta,
                          const ModelConfig &config,
                          const CircuitSpec &circuit, const Matrix &samples,
                          std::span<const int> labels, int threads) {
    validate_model_config(config);
    check_batch(samples, labels);

    const std::size_t n = samples.rows;
    std::vector<double> costs(n, 0.0);
    EvalResult out;
    out.predictions.assign(n, -1);

    parallel_samples(n, threads, [&](std::size_t s) {
        const StateVector input =
            amplitude_encode(samples.row(s), config.ansatz.n_qubits);
        const auto fwd = forward(circuit, theta, input, config.readout_qubits);
        const auto probs = softmax(fwd.expectations);
        costs[s] = cross_entropy(probs, labels[s]);
        out.predictions[s] = argmax_lowest(probs);
    });

    std::size_t correct = 0;
    for (std::size_t s = 0; s < n; ++s) {
        out.cost += costs[s];
        if (out.predictions[s] == labels[s]) ++correct;
    }
    out.cost /= static_cast<double>(n);
    out.accuracy = static_cast<double>(correct) / static_cast<double>(n);
    return out;
}

ParameterVector init_parameters(const ModelConfig &config, int n_params) {
    std::mt19937_64 rng(config.init_seed);
    ParameterVector theta(n_params);
    if (config.init_scale == InitScale::UniformZeroTwoPi) {
        std::uniform_real_distribution<double> dist(0.0,
                                                    2.0 * std::numbers::pi);
        for (auto &t : theta) t = dist(rng);
    } else {
        std::normal_distribution<double> dist(0.0, 0.1);
        for (auto &t : theta) t = dist(rng);
    }
    return theta;
}

TrainResult train(const Matrix &train_samples,
                  std::span<const int> train_labels, const Matrix &val_samples,
                  std::span<const int> val_labels, const ModelConfig &config,
                  int threads) {
    validate_model_config(config);
    check_batch(train_samples, train_labels);
    check_batch(val_samples, val_labels);

    bool present[kNumClasses] = {};
    for (int y : train_labels) present[y] = true;
    for (int c = 0; c < kNumClasses; ++c) {
        if (!present[c]) {
            throw StratificationError("class " + std::to_string(c) +
                                      " missing from the training set");
        }
    }

    const CircuitSpec circuit = build_circuit(config.ansatz);
    TrainResult result;
    result.theta = init_parameters(config, circuit.n_params);
    result.history.reserve(config.epochs);

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const BatchGradient bg = cost_gradient(result.theta, config, circuit,
                                               train_samples, train_labels,
                                               threads);
        const EvalResult val = evaluate_batch(result.theta, config, circuit,
                                              val_samples, val_labels,
                                              threads);
        result.history.push_back(
            {epoch, bg.cost,
             static_cast<double>(bg.n_correct) /
                 static_cast<double>(train_samples.rows),
             val.cost, val.accuracy});
        for (std::size_t k = 0; k < result.theta.size(); ++k) {
            result.theta[k] -= config.learning_rate * bg.grad[k];
        }
    }
    return result;
}

const char *init_scale_name(InitScale scale) {
    return scale == InitScale::UniformZeroTwoPi ? "uniform_0_2pi"
                                                : "normal_small";
}

InitScale init_scale_from_name(const std::string &name) {
    if (name == "uniform_0_2pi" || name == "uniform") {
        return InitScale::UniformZeroTwoPi;
    }
    if (name == "normal_small" || name == "normal") {
        return InitScale::NormalSmall;
    }
    throw ContractError("unknown init scale '" + name + "'");
}

void save_checkpoint(const std::string &path, const Checkpoint &checkpoint) {
    nlohmann::json doc{
        {"model",
         {{"n_qubits", checkpoint.config.ansatz.n_qubits},
          {"n_layers", checkpoint.config.ansatz.n_layers},
          {"readout_qubits", checkpoint.config.readout_qubits},
          {"learning_rate", checkpoint.config.learning_rate},
          {"epochs", checkpoint.config.epochs},
          {"init_seed", checkpoint.config.init_seed},
          {"init_scale", init_scale_name(checkpoint.config.init_scale)}}},
        {"theta", checkpoint.theta},
        {"class_names", checkpoint.class_names},
    };
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write checkpoint to " + path);
    }
    out << doc.dump(2) << '\n';
}

Checkpoint load_checkpoint(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read checkpoint from " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError("checkpoint " + path + ": " + e.what());
    }
    Checkpoint checkpoint;
    try {
        const auto &model = doc.at("model");
        checkpoint.config.ansatz.n_qubits = model.at("n_qubits").get<int>();
        checkpoint.config.ansatz.n_layers = model.at("n_layers").get<int>();
        checkpoint.config.readout_qubits =
            model.at("readout_qubits").get<std::vector<int>>();
        checkpoint.config.learning_rate =
            model.at("learning_rate").get<double>();
        checkpoint.config.epochs = model.at("epochs").get<int>();
        checkpoint.config.init_seed =
            model.at("init_seed").get<std::uint64_t>();
        checkpoint.config.init_scale =
            init_scale_from_name(model.at("init_scale").get<std::string>());
        checkpoint.theta = doc.at("theta").get<ParameterVector>();
        checkpoint.class_names =
            doc.at("class_names").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError("checkpoint " + path + ": " + e.what());
    }
    return checkpoint;
}

} // namespace qvc
