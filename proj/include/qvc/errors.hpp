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
 * @file errors.hpp
 * Error types shared by all qvc components.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qvc {

/// Base class for all qvc errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested register or input exceeds the simulable size.
class CapacityError final : public Error {
  public:
    using Error::Error;
};

/// Input is degenerate (zero vector, rank-0 matrix, empty tally).
class DegenerateInputError final : public Error {
  public:
    using Error::Error;
};

/// An API precondition was violated (length mismatch, bad argument).
class ContractError final : public Error {
  public:
    using Error::Error;
};

/// Qubit or element index out of range.
class IndexError final : public Error {
  public:
    using Error::Error;
};

/// Malformed input file.
class ParseError final : public Error {
  public:
    using Error::Error;
};

/// A class is too small (or absent) for the requested split.
class StratificationError final : public Error {
  public:
    using Error::Error;
};

/// Filesystem failure, reported with the offending path.
class IoError final : public Error {
  public:
    using Error::Error;
};

} // namespace qvc
