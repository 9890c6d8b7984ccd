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
 * @file evaluation.hpp
 * Confusion matrices, per-class metrics, k-fold cross-validation of the
 * full pipeline, and report/curve emission.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "qvc/dataset.hpp"
#include "qvc/model.hpp"
#include "qvc/preprocess.hpp"

namespace qvc {

struct ConfusionMatrix {
    int n_classes = 0;
    std::vector<std::int64_t> counts; // row = true class, col = predicted

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(int n)
        : n_classes(n), counts(static_cast<std::size_t>(n) * n, 0) {}

    std::int64_t &at(int truth, int predicted) {
        return counts[static_cast<std::size_t>(truth) * n_classes + predicted];
    }
    std::int64_t at(int truth, int predicted) const {
        return counts[static_cast<std::size_t>(truth) * n_classes + predicted];
    }
    std::int64_t total() const;

    bool operator==(const ConfusionMatrix &) const = default;
};

ConfusionMatrix confusion(std::span<const int> true_labels,
                          std::span<const int> predicted_labels,
                          int n_classes);

struct ClassMetric {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    // zero-denominator cases report 0 with the flag cleared instead of NaN
    bool precision_defined = true;
    bool recall_defined = true;
};

struct ClassMetrics {
    std::vector<ClassMetric> per_class;
    double accuracy = 0.0;
};

/// Precision/recall/F1 per class plus overall accuracy.
/// DegenerateInputError on an all-zero matrix.
ClassMetrics metrics(const ConfusionMatrix &cm);

struct FoldResult {
    int fold = 0;
    double train_accuracy = 0.0;
    double train_cost = 0.0;
    double test_accuracy = 0.0;
    double test_cost = 0.0;
    int n_components = -1; // PCA width for this fold, -1 when PCA is off
    ConfusionMatrix test_confusion;
    TrainHistory history;
};

struct CvReport {
    std::vector<FoldResult> folds;
    double mean_train_accuracy = 0.0;
    double mean_train_cost = 0.0;
    double mean_test_accuracy = 0.0;
    double mean_test_cost = 0.0;
};

/// Per fold: fit preprocessing (on the fold's training rows, or on the
/// whole dataset under FitScope::All), train a model seeded from
/// seed + fold index + 1, and evaluate on the held-out rows.
CvReport cross_validate(const Dataset &dataset, const ModelConfig &base,
                        const PreprocessConfig &preprocess, FitScope scope,
                        int k, std::uint64_t seed, int threads = 1);

/// Published 3-fold CuMiDa benchmark accuracies used as reference rows in
/// emitted reports.
nlohmann::json reference_accuracies();

nlohmann::json confusion_json(const ConfusionMatrix &cm);
nlohmann::json metrics_json(const ClassMetrics &m);

/// Write curves.csv (epoch, train_accuracy, train_cost, val_accuracy,
/// val_cost) with full double precision.
void write_curves_csv(const TrainHistory &history, const std::string &path);

/// Write curves.csv and report.json (config echo, confusion matrix,
/// per-class metrics, accuracy, reference rows, plus any `extra` fields)
/// into out_dir.
void emit_report(const TrainHistory &history, const ConfusionMatrix &cm,
                 const ClassMetrics &m, const nlohmann::json &config,
                 const std::string &out_dir,
                 const nlohmann::json &extra = nlohmann::json::object());

nlohmann::json cv_report_json(const CvReport &report,
                              const nlohmann::json &config);

} // namespace qvc
