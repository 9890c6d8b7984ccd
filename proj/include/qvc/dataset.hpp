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
 * @file dataset.hpp
 * CSV ingestion for microarray-style tables (one row per sample, an id
 * column, a label column, numeric gene columns) plus seeded stratified
 * splits and k-fold partitions.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "qvc/matrix.hpp"

namespace qvc {

struct Dataset {
    std::vector<std::string> sample_ids;
    Matrix features;
    std::vector<int> labels;              // indices into class_names
    std::vector<std::string> class_names; // ordered by first appearance

    std::size_t n_samples() const { return features.rows; }
    std::size_t n_features() const { return features.cols; }

    bool operator==(const Dataset &) const = default;
};

/// Parse a CSV with a header row. The first column is the sample id
/// (unless it is the label column, in which case ids are synthesized as
/// row numbers), the named label column carries the class, and every
/// other column must be numeric. Class indices follow first appearance.
Dataset load_csv(const std::string &path,
                 const std::string &label_column = "type");

/// Write a Dataset back out (generic feature names); load_csv(save_csv(d))
/// reproduces d except for synthesized feature names.
void save_csv(const Dataset &dataset, const std::string &path,
              const std::string &label_column = "type");

/// Sample count per class, indexed like class_names.
std::vector<std::size_t> class_distribution(const Dataset &dataset);

/// {n_samples, n_features, class_names, class_counts}.
nlohmann::json dataset_summary(const Dataset &dataset);

/// Rows selected by index, preserving order.
Dataset subset(const Dataset &dataset, std::span<const std::size_t> indices);

struct SplitResult {
    Dataset train;
    Dataset val;
};

/// Per class: shuffle with the seeded generator and move
/// round(count * val_fraction) samples (clamped to keep at least one on
/// each side) into the validation set.
SplitResult stratified_split(const Dataset &dataset, double val_fraction,
                             std::uint64_t seed);

struct FoldIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// k disjoint, exhaustive test folds with per-class counts differing by at
/// most one between folds; extras go to the currently smallest folds so
/// overall fold sizes stay balanced.
std::vector<FoldIndices> stratified_kfold(const Dataset &dataset, int k,
                                          std::uint64_t seed);

} // namespace qvc
