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
 * @file statevector.hpp
 * Dense statevector representation and exact gate kernels.
 *
 * Bit convention is little-endian throughout: qubit k corresponds to bit k
 * of the amplitude index. Gate kernels update amplitudes in place by stride
 * iteration over index pairs; no gate matrix is ever materialized.
 */
#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace qvc {

/// Largest register the dense engine accepts (2^20 amplitudes, 16 MiB).
inline constexpr int kMaxQubits = 20;

struct StateVector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amps; // 2^n_qubits amplitudes

    std::size_t size() const { return amps.size(); }

    /// L2 norm of the amplitude vector (1 for any valid state).
    double norm() const;
};

/// Prepare |0...0> on n_qubits wires.
///
/// Throws CapacityError unless 1 <= n_qubits <= kMaxQubits.
StateVector init_zero_state(int n_qubits);

/// Load a classical feature vector as state amplitudes.
///
/// The vector is L2-normalized and zero-padded up to 2^n_qubits entries.
/// Throws CapacityError if the vector does not fit the register and
/// DegenerateInputError if it has zero norm.
StateVector amplitude_encode(std::span<const double> features, int n_qubits);

enum class GateKind { H, RX, RY, RZ, CNOT, Toffoli };

/// One circuit element. Qubit slots q0..q2 are used by arity:
/// single-qubit gates use q0; CNOT is (q0=control, q1=target);
/// Toffoli is (q0, q1 controls, q2 target). param_slot indexes a
/// ParameterVector and is >= 0 exactly for rotation gates.
struct GateOp {
    GateKind kind = GateKind::H;
    int q0 = -1;
    int q1 = -1;
    int q2 = -1;
    int param_slot = -1;

    static GateOp h(int q) { return {GateKind::H, q, -1, -1, -1}; }
    static GateOp rx(int q, int slot) { return {GateKind::RX, q, -1, -1, slot}; }
    static GateOp ry(int q, int slot) { return {GateKind::RY, q, -1, -1, slot}; }
    static GateOp rz(int q, int slot) { return {GateKind::RZ, q, -1, -1, slot}; }
    static GateOp cnot(int control, int target) {
        return {GateKind::CNOT, control, target, -1, -1};
    }
    static GateOp toffoli(int c0, int c1, int target) {
        return {GateKind::Toffoli, c0, c1, target, -1};
    }

    bool is_rotation() const {
        return kind == GateKind::RX || kind == GateKind::RY ||
               kind == GateKind::RZ;
    }
    int arity() const {
        if (kind == GateKind::CNOT) return 2;
        if (kind == GateKind::Toffoli) return 3;
        return 1;
    }

    bool operator==(const GateOp &) const = default;
};

const char *gate_kind_name(GateKind kind);

/// Apply one gate in place. A rotation angle (radians) must be supplied
/// exactly when the gate is a rotation; violations raise ContractError.
/// Invalid or duplicate qubit indices raise IndexError.
void apply_gate(StateVector &state, const GateOp &gate,
                std::optional<double> angle = std::nullopt);

/// Apply the inverse of a gate (rotations with negated angle; H, CNOT and
/// Toffoli are self-inverse).
void apply_gate_inverse(StateVector &state, const GateOp &gate,
                        std::optional<double> angle = std::nullopt);

// Pauli actions used by the adjoint differentiation sweep.
void apply_pauli_x(StateVector &state, int qubit);
void apply_pauli_y(StateVector &state, int qubit);
void apply_pauli_z(StateVector &state, int qubit);

/// <Z> on one qubit: sum of |amp|^2 weighted +1 where the qubit bit is 0
/// and -1 where it is 1. Always in [-1, 1].
double expectation_z(const StateVector &state, int qubit);

/// <a|b>, conjugating the left argument.
std::complex<double> inner_product(const StateVector &a,
                                   const StateVector &b);

} // namespace qvc
