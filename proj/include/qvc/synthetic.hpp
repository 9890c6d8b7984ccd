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
 * @file synthetic.hpp
 * Seeded Gaussian-blob fixture generator for end-to-end tests.
 */
#pragma once

#include <cstdint>

#include "qvc/dataset.hpp"

namespace qvc {

/// Isotropic Gaussian blobs (per-dimension std `sigma`). The center of
/// class c sits `separation * sigma` from the origin along feature axis
/// c * (n_features / n_classes), so classes are mutually orthogonal.
/// Samples are dealt to classes round-robin; everything is seeded.
Dataset make_blobs(std::size_t n_samples, std::size_t n_features,
                   int n_classes, double separation, double sigma,
                   std::uint64_t seed);

} // namespace qvc
