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

#include "qvc/evaluation.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>

#include "qvc/errors.hpp"

namespace qvc {

std::int64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

ConfusionMatrix confusion(std::span<const int> true_labels,
                          std::span<const int> predicted_labels,
                          int n_classes) {
    if (true_labels.size() != predicted_labels.size()) {
        throw ContractError("confusion: label lists differ in length");
    }
    if (n_classes < 1) {
        throw ContractError("confusion: n_classes must be >= 1");
    }
    ConfusionMatrix cm(n_classes);
    for (std::size_t i = 0; i < true_labels.size(); ++i) {
        const int t = true_labels[i];
        const int p = predicted_labels[i];
        if (t < 0 || t >= n_classes || p < 0 || p >= n_classes) {
            throw ContractError("confusion: label out of range at index " +
                                std::to_string(i));
        }
        cm.at(t, p) += 1;
    }
    return cm;
}

ClassMetrics metrics(const ConfusionMatrix &cm) {
    const std::int64_t total = cm.total();
    if (total == 0) {
        throw DegenerateInputError("metrics: confusion matrix is empty");
    }
    ClassMetrics out;
    out.per_class.resize(cm.n_classes);
    std::int64_t diagonal = 0;
    for (int c = 0; c < cm.n_classes; ++c) {
        const std::int64_t tp = cm.at(c, c);
        diagonal += tp;
        std::int64_t predicted = 0, actual = 0;
        for (int j = 0; j < cm.n_classes; ++j) {
            predicted += cm.at(j, c);
            actual += cm.at(c, j);
        }
        ClassMetric &m = out.per_class[c];
        m.precision_defined = predicted > 0;
        m.recall_defined = actual > 0;
        m.precision = m.precision_defined
                          ? static_cast<double>(tp) /
                                static_cast<double>(predicted)
                          : 0.0;
        m.recall = m.recall_defined
                       ? static_cast<double>(tp) / static_cast<double>(actual)
                       : 0.0;
        const double pr = m.precision + m.recall;
        m.f1 = (m.precision_defined && m.recall_defined && pr > 0.0)
                   ? 2.0 * m.precision * m.recall / pr
                   : 0.0;
    }
    out.accuracy = static_cast<double>(diagonal) / static_cast<double>(total);
    return out;
}

CvReport cross_validate(const Dataset &dataset, const ModelConfig &base,
                        const PreprocessConfig &preprocess, FitScope scope,
                        int k, std::uint64_t seed, int threads) {
    const auto folds = stratified_kfold(dataset, k, seed);
    CvReport report;
    report.folds.reserve(folds.size());

    for (int f = 0; f < k; ++f) {
        const Dataset fold_train = subset(dataset, folds[f].train);
        const Dataset fold_test = subset(dataset, folds[f].test);

        const Matrix &fit_matrix = scope == FitScope::All
                                       ? dataset.features
                                       : fold_train.features;
        const PreprocessModel pp = fit_preprocess(fit_matrix, preprocess);
        const Matrix train_x = apply_preprocess(pp, fold_train.features);
        const Matrix test_x = apply_preprocess(pp, fold_test.features);

        ModelConfig config = base;
        if (config.ansatz.n_qubits <= 0) {
            config.ansatz.n_qubits = derive_qubit_count(train_x.cols);
        }
        config.init_seed = seed + static_cast<std::uint64_t>(f) + 1;

        const TrainResult trained =
            train(train_x, fold_train.labels, test_x, fold_test.labels,
                  config, threads);

        const CircuitSpec circuit = build_circuit(config.ansatz);
        const EvalResult on_train = evaluate_batch(
            trained.theta, config, circuit, train_x, fold_train.labels,
            threads);
        const EvalResult on_test = evaluate_batch(
            trained.theta, config, circuit, test_x, fold_test.labels,
            threads);

        FoldResult fold;
        fold.fold = f;
        fold.train_accuracy = on_train.accuracy;
        fold.train_cost = on_train.cost;
        fold.test_accuracy = on_test.accuracy;
        fold.test_cost = on_test.cost;
        fold.n_components =
            pp.pca ? static_cast<int>(pp.pca->components.rows) : -1;
        fold.test_confusion =
            confusion(fold_test.labels, on_test.predictions, kNumClasses);
        fold.history = trained.history;
        report.folds.push_back(std::move(fold));
    }

    for (const auto &fold : report.folds) {
        report.mean_train_accuracy += fold.train_accuracy;
        report.mean_train_cost += fold.train_cost;
        report.mean_test_accuracy += fold.test_accuracy;
        report.mean_test_cost += fold.test_cost;
    }
    const auto nf = static_cast<double>(report.folds.size());
    report.mean_train_accuracy /= nf;
    report.mean_train_cost /= nf;
    report.mean_test_accuracy /= nf;
    report.mean_test_cost /= nf;
    return report;
}

nlohmann::json reference_accuracies() {
    return nlohmann::json{
        {"Support Vector Machine (SVM)", 0.95},
        {"Random Forest (RF)", 0.91},
        {"K-Nearest Neighbors (KNN)", 0.87},
        {"Decision Tree (DT)", 0.85},
        {"Naive Bayes (NB)", 0.85},
        {"Multi-Layer Perceptron (MLP)", 0.82},
        {"k-Means", 0.46},
        {"Hoeffding Tree (HC)", 0.38},
        {"ZeroR", 0.35},
    };
}

nlohmann::json confusion_json(const ConfusionMatrix &cm) {
    nlohmann::json rows = nlohmann::json::array();
    for (int t = 0; t < cm.n_classes; ++t) {
        nlohmann::json row = nlohmann::json::array();
        for (int p = 0; p < cm.n_classes; ++p) row.push_back(cm.at(t, p));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json metrics_json(const ClassMetrics &m) {
    nlohmann::json per_class = nlohmann::json::array();
    for (const auto &c : m.per_class) {
        per_class.push_back({
            {"precision", c.precision},
            {"recall", c.recall},
            {"f1", c.f1},
            {"precision_defined", c.precision_defined},
            {"recall_defined", c.recall_defined},
        });
    }
    return nlohmann::json{{"per_class", std::move(per_class)},
                          {"accuracy", m.accuracy}};
}

void write_curves_csv(const TrainHistory &history, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out.precision(17);
    out << "epoch,train_accuracy,train_cost,val_accuracy,val_cost\n";
    for (const auto &rec : history) {
        out << rec.epoch << ',' << rec.train_accuracy << ',' << rec.train_cost
            << ',' << rec.val_accuracy << ',' << rec.val_cost << '\n';
    }
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

void emit_report(const TrainHistory &history, const ConfusionMatrix &cm,
                 const ClassMetrics &m, const nlohmann::json &config,
                 const std::string &out_dir, const nlohmann::json &extra) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create directory " + out_dir + ": " +
                      ec.message());
    }
    write_curves_csv(history,
                     (std::filesystem::path(out_dir) / "curves.csv").string());

    nlohmann::json doc;
    doc["config"] = config;
    doc["confusion_matrix"] = confusion_json(cm);
    doc["metrics"] = metrics_json(m);
    doc["accuracy"] = m.accuracy;
    doc["reference_accuracies"] = reference_accuracies();
    for (auto it = extra.begin(); it != extra.end(); ++it) {
        doc[it.key()] = it.value();
    }

    const auto path = std::filesystem::path(out_dir) / "report.json";
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
}

nlohmann::json cv_report_json(const CvReport &report,
                              const nlohmann::json &config) {
    nlohmann::json folds = nlohmann::json::array();
    for (const auto &fold : report.folds) {
        folds.push_back({
            {"fold", fold.fold},
            {"train_accuracy", fold.train_accuracy},
            {"train_cost", fold.train_cost},
            {"test_accuracy", fold.test_accuracy},
            {"test_cost", fold.test_cost},
            {"n_components", fold.n_components},
            {"confusion_matrix", confusion_json(fold.test_confusion)},
        });
    }
    const double delta = report.mean_test_accuracy - 0.85;
    return nlohmann::json{
        {"config", config},
        {"folds", std::move(folds)},
        {"mean_train_accuracy", report.mean_train_accuracy},
        {"mean_train_cost", report.mean_train_cost},
        {"mean_test_accuracy", report.mean_test_accuracy},
        {"mean_test_cost", report.mean_test_cost},
        {"reference_accuracies", reference_accuracies()},
        {"benchmark_comparison",
         {{"reference_cv_accuracy", 0.85},
          {"band", 0.10},
          {"delta", delta},
          {"within_band", std::abs(delta) <= 0.10}}},
    };
}

} // namespace qvc
