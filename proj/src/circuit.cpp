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

#include "qvc/circuit.hpp"

#include <string>

#include "qvc/errors.hpp"

namespace qvc {

namespace {

void check_config(const AnsatzConfig &config) {
    if (config.n_qubits < 1) {
        throw ContractError("ansatz requires n_qubits >= 1");
    }
    if (config.n_layers < 1) {
        throw ContractError("ansatz requires n_layers >= 1");
    }
}

void append_entanglers(std::vector<GateOp> &gates, int n_qubits) {
    for (int q = 0; q + 1 < n_qubits; ++q) {
        gates.push_back(GateOp::cnot(q, q + 1));
    }
    for (int q = 0; q + 2 < n_qubits; ++q) {
        gates.push_back(GateOp::toffoli(q, q + 1, q + 2));
    }
}

} // namespace

std::vector<GateOp> build_hea1_layer(int n_qubits, int param_base) {
    std::vector<GateOp> gates;
    for (int q = 0; q < n_qubits; ++q) gates.push_back(GateOp::h(q));
    for (int q = 0; q < n_qubits; ++q) {
        gates.push_back(GateOp::rx(q, param_base + q));
    }
    for (int q = 0; q < n_qubits; ++q) {
        gates.push_back(GateOp::ry(q, param_base + n_qubits + q));
    }
    append_entanglers(gates, n_qubits);
    return gates;
}

std::vector<GateOp> build_hea2_layer(int n_qubits, int param_base) {
    std::vector<GateOp> gates;
    for (int q = 0; q < n_qubits; ++q) gates.push_back(GateOp::h(q));
    for (int q = 0; q < n_qubits; ++q) {
        gates.push_back(GateOp::ry(q, param_base + q));
    }
    for (int q = 0; q < n_qubits; ++q) {
        gates.push_back(GateOp::rz(q, param_base + n_qubits + q));
    }
    append_entanglers(gates, n_qubits);
    return gates;
}

int param_count(const AnsatzConfig &config) {
    check_config(config);
    return 4 * config.n_qubits * config.n_layers;
}

CircuitSpec build_circuit(const AnsatzConfig &config) {
    check_config(config);
    CircuitSpec circuit;
    circuit.config = config;
    circuit.n_params = param_count(config);
    const int per_block = 2 * config.n_qubits;
    for (int layer = 0; layer < config.n_layers; ++layer) {
        const int base = 2 * per_block * layer;
        auto hea1 = build_hea1_layer(config.n_qubits, base);
        auto hea2 = build_hea2_layer(config.n_qubits, base + per_block);
        circuit.gates.insert(circuit.gates.end(), hea1.begin(), hea1.end());
        circuit.gates.insert(circuit.gates.end(), hea2.begin(), hea2.end());
    }
    return circuit;
}

nlohmann::json circuit_json(const CircuitSpec &circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : circuit.gates) {
        nlohmann::json entry;
        entry["kind"] = gate_kind_name(g.kind);
        std::vector<int> targets;
        const int qs[3] = {g.q0, g.q1, g.q2};
        for (int i = 0; i < g.arity(); ++i) targets.push_back(qs[i]);
        entry["targets"] = targets;
        if (g.param_slot >= 0) entry["param_slot"] = g.param_slot;
        gates.push_back(std::move(entry));
    }
    return nlohmann::json{
        {"n_qubits", circuit.config.n_qubits},
        {"n_layers", circuit.config.n_layers},
        {"entangle_pattern", "linear"},
        {"n_params", circuit.n_params},
        {"gates", std::move(gates)},
    };
}

} // namespace qvc
