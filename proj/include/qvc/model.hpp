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
/**
 * @file model.hpp
 * The classifier head and training loop: amplitude-encoded sample ->
 * ansatz circuit -> <Z> on five readout qubits -> softmax -> cross-entropy,
 * optimized by full-batch gradient descent.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qvc/circuit.hpp"
#include "qvc/gradient.hpp"
#include "qvc/matrix.hpp"

namespace qvc {

inline constexpr int kNumClasses = 5;

enum class InitScale {
    UniformZeroTwoPi, // uniform angles in [0, 2*pi)
    NormalSmall,      // normal(0, 0.1), avoids starting on a plateau
};

struct ModelConfig {
    AnsatzConfig ansatz;
    std::vector<int> readout_qubits = {0, 1, 2, 3, 4};
    double learning_rate = 0.01;
    int epochs = 100;
    std::uint64_t init_seed = 0;
    InitScale init_scale = InitScale::UniformZeroTwoPi;
};

/// Validates readout count/distinctness, positive rates, epoch count.
void validate_model_config(const ModelConfig &config);

/// Smallest register that fits the features and leaves room for one
/// readout qubit per class.
int derive_qubit_count(std::size_t n_features);

struct EpochRecord {
    int epoch = 0; // 1-based
    double train_cost = 0.0;
    double train_accuracy = 0.0;
    double val_cost = 0.0;
    double val_accuracy = 0.0;

    bool operator==(const EpochRecord &) const = default;
};

using TrainHistory = std::vector<EpochRecord>;

/// Numerically stable softmax (shift-invariant in the logits).
std::vector<double> softmax(std::span<const double> logits);

/// -log(probs[label]); DomainError conditions map to DegenerateInputError.
double cross_entropy(std::span<const double> probs, int label);

/// Class probabilities for one (already preprocessed) sample.
std::vector<double> predict_proba(const ParameterVector &theta,
                                  const ModelConfig &config,
                                  const CircuitSpec &circuit,
                                  std::span<const double> sample);

/// Argmax class, ties broken towards the lowest index.
int predict(const ParameterVector &theta, const ModelConfig &config,
            const CircuitSpec &circuit, std::span<const double> sample);

struct BatchGradient {
    double cost = 0.0;           // mean cross-entropy over the batch
    std::vector<double> grad;    // mean d cost / d theta
    std::size_t n_correct = 0;   // argmax hits, for accuracy tracking
};

/// Mean cost and mean parameter gradient over a batch, via the adjoint
/// Jacobian and the softmax/cross-entropy chain rule (dC/de_j = p_j - y_j).
/// Per-sample work may run on `threads` workers; the reduction order is
/// fixed by sample index, so results do not depend on the thread count.
BatchGradient cost_gradient(const ParameterVector &theta,
                            const ModelConfig &config,
                            const CircuitSpec &circuit, const Matrix &samples,
                            std::span<const int> labels, int threads = 1);

struct EvalResult {
    double cost = 0.0;
    double accuracy = 0.0;
    std::vector<int> predictions;
};

/// Forward-only evaluation of a parameter vector on a labeled batch.
EvalResult evaluate_batch(const ParameterVector &theta,
                          const ModelConfig &config,
                          const CircuitSpec &circuit, const Matrix &samples,
                          std::span<const int> labels, int threads = 1);

/// Seeded initial angles per the configured scheme.
ParameterVector init_parameters(const ModelConfig &config, int n_params);

struct TrainResult {
    ParameterVector theta;
    TrainHistory history;
};

/// Full-batch gradient descent. Each history record holds the metrics at
/// the parameters the epoch started from; the returned theta has all
/// `epochs` updates applied. Deterministic given the config seed.
TrainResult train(const Matrix &train_samples,
                  std::span<const int> train_labels, const Matrix &val_samples,
                  std::span<const int> val_labels, const ModelConfig &config,
                  int threads = 1);

struct Checkpoint {
    ModelConfig config;
    ParameterVector theta;
    std::vector<std::string> class_names;
};

void save_checkpoint(const std::string &path, const Checkpoint &checkpoint);
Checkpoint load_checkpoint(const std::string &path);

const char *init_scale_name(InitScale scale);
InitScale init_scale_from_name(const std::string &name);

} // namespace qvc
