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
 * @file preprocess.hpp
 * Classical preprocessing chain, applied in this order:
 *   1. standardize each column (zero mean, population std)
 *   2. min-max scale each standardized column to [0, 1], clamping unseen
 *      values into the range
 *   3. optional PCA keeping the smallest k whose cumulative explained
 *      variance reaches the target
 *
 * PCA is computed from the eigendecomposition of the samples x samples
 * Gram matrix, never from the features x features covariance — at 54k+
 * gene columns the covariance would not fit in memory.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qvc/matrix.hpp"

namespace qvc {

struct ScalerModel {
    std::vector<double> means;
    std::vector<double> stds;     // population (divide by N)
    std::vector<double> mins;     // of the standardized columns
    std::vector<double> maxs;
    std::vector<bool> constant;   // columns that carry a single value

    bool operator==(const ScalerModel &) const = default;
};

struct PcaModel {
    std::vector<double> means;               // centering vector
    Matrix components;                       // k x d, orthonormal rows
    std::vector<double> explained_variance_ratios;
    double variance_target = 0.95;

    bool operator==(const PcaModel &) const = default;
};

enum class FitScope { Train, All };

struct PreprocessConfig {
    bool use_pca = false;
    double variance_target = 0.95;
};

struct PreprocessModel {
    ScalerModel scaler;
    std::optional<PcaModel> pca;
    PreprocessConfig config;
};

/// Column means, population stds and standardized min/max from >= 2 rows.
ScalerModel fit_scaler(const Matrix &train);

/// Standardize then min-max to [0,1]; unseen values clamp into range and
/// constant columns map to 0.5.
Matrix apply_scaler(const ScalerModel &model, const Matrix &matrix);

/// Principal directions retaining `variance_target` of total variance.
/// Throws DegenerateInputError when the matrix has no variance at all.
PcaModel fit_pca(const Matrix &matrix, double variance_target = 0.95);

/// Project rows: (x - means) * components^T.
Matrix apply_pca(const PcaModel &model, const Matrix &matrix);

/// Fit the full chain on a training matrix.
PreprocessModel fit_preprocess(const Matrix &train,
                               const PreprocessConfig &config);

/// Apply the fitted chain to any matrix with matching feature count.
Matrix apply_preprocess(const PreprocessModel &model, const Matrix &matrix);

nlohmann::json preprocess_to_json(const PreprocessModel &model);
PreprocessModel preprocess_from_json(const nlohmann::json &doc);

void save_preprocess_model(const std::string &path,
                           const PreprocessModel &model);
PreprocessModel load_preprocess_model(const std::string &path);

const char *fit_scope_name(FitScope scope);
FitScope fit_scope_from_name(const std::string &name);

} // namespace qvc
