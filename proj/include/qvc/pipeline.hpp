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
 * @file pipeline.hpp
 * End-to-end command implementations shared by the CLI and the tests.
 * Every run is a pure function of (input files, config, seed); emitted
 * artifacts embed the resolved config so reruns are byte-identical.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "qvc/evaluation.hpp"
#include "qvc/gradient.hpp"
#include "qvc/model.hpp"
#include "qvc/preprocess.hpp"

namespace qvc {

struct RunConfig {
    std::string data_path;
    std::string label_column = "type";
    std::uint64_t seed = 42;
    int qubits = 0; // 0 = derive from the (possibly reduced) feature count
    int layers = 25;
    double learning_rate = 0.01;
    int epochs = 100;
    bool pca = false;
    double pca_variance = 0.95;
    FitScope fit_scope = FitScope::Train;
    double val_fraction = 0.2;
    int folds = 3;
    std::string out_dir = ".";
    int threads = 1;
    InitScale init_scale = InitScale::UniformZeroTwoPi;
    std::vector<int> readout_qubits = {0, 1, 2, 3, 4};
};

/// Resolved-config echo embedded in every artifact.
nlohmann::json config_json(const RunConfig &config);

/// Overlay values from a JSON document onto `base` (unknown keys are a
/// ContractError so typos do not silently vanish).
RunConfig config_from_json(const nlohmann::json &doc, RunConfig base);
RunConfig load_config_file(const std::string &path, RunConfig base);

/// Load the CSV and return the dataset summary; writes summary.json when
/// out_dir is non-empty.
nlohmann::json run_ingest(const RunConfig &config);

/// Fit the preprocessing chain (on a stratified training split, or on the
/// whole file under fit_scope=all), write preprocess_model.json and the
/// transformed matrix as transformed.csv. Returns a summary.
nlohmann::json run_preprocess(const RunConfig &config);

/// Split, preprocess, train; writes checkpoint.json, curves.csv and
/// report.json. Returns the report document.
nlohmann::json run_train(const RunConfig &config);

/// Stratified k-fold cross-validation; writes cv_report.json and one
/// curves_fold<i>.csv per fold. Returns the report document.
nlohmann::json run_crossval(const RunConfig &config);

/// Randomized gradient consistency sweep (seeded by config.seed).
GradCheckResult run_gradcheck(const RunConfig &config, int n_circuits = 100);

} // namespace qvc
