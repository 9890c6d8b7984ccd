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
 * @file circuit.hpp
 * Layered dual hardware-efficient ansatz construction.
 *
 * One composite layer is HEA block 1 (H on every qubit, RX and RY
 * rotations per qubit, then a CNOT chain and a Toffoli chain) followed by
 * HEA block 2 (H, RY and RZ rotations, same entanglers). Parameter slots
 * are assigned contiguously in order of first appearance, giving exactly
 * 4 * n_qubits * n_layers slots.
 */
#pragma once

#include <vector>

#include "json.hpp"

#include "qvc/statevector.hpp"

namespace qvc {

enum class EntanglePattern { Linear };

struct AnsatzConfig {
    int n_qubits = 1;
    int n_layers = 25;
    EntanglePattern entangle_pattern = EntanglePattern::Linear;

    bool operator==(const AnsatzConfig &) const = default;
};

struct CircuitSpec {
    AnsatzConfig config;
    std::vector<GateOp> gates;
    int n_params = 0;

    bool operator==(const CircuitSpec &) const = default;
};

/// First HEA block: H, RX, RY per qubit plus linear CNOT/Toffoli chains.
/// Consumes parameter slots param_base .. param_base + 2*n_qubits - 1.
std::vector<GateOp> build_hea1_layer(int n_qubits, int param_base);

/// Second HEA block: identical layout with RY/RZ rotations.
std::vector<GateOp> build_hea2_layer(int n_qubits, int param_base);

/// Number of parameter slots a circuit will use: 4 * n_qubits * n_layers.
int param_count(const AnsatzConfig &config);

/// Build the full circuit: n_layers composite layers, each HEA1 then HEA2.
CircuitSpec build_circuit(const AnsatzConfig &config);

/// Gate-list serialization (kind, targets, param_slot) for inspection.
nlohmann::json circuit_json(const CircuitSpec &circuit);

} // namespace qvc
