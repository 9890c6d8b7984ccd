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

#include "qvc/synthetic.hpp"

#include <random>
#include <string>

#include "qvc/errors.hpp"

namespace qvc {

Dataset make_blobs(std::size_t n_samples, std::size_t n_features,
                   int n_classes, double separation, double sigma,
                   std::uint64_t seed) {
    if (n_samples == 0 || n_features == 0 || n_classes < 1) {
        throw ContractError("make_blobs: empty shape");
    }
    if (static_cast<std::size_t>(n_classes) > n_features) {
        throw ContractError("make_blobs: need one feature axis per class");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);

    Dataset dataset;
    dataset.features = Matrix(n_samples, n_features);
    const std::size_t axis_stride = n_features / n_classes;
    for (int c = 0; c < n_classes; ++c) {
        dataset.class_names.push_back("c" + std::to_string(c));
    }
    for (std::size_t i = 0; i < n_samples; ++i) {
        const int label = static_cast<int>(i % n_classes);
        dataset.labels.push_back(label);
        dataset.sample_ids.push_back("s" + std::to_string(i));
        auto row = dataset.features.row(i);
        for (auto &v : row) v = noise(rng);
        row[label * axis_stride] += separation * sigma;
    }
    return dataset;
}

} // namespace qvc
