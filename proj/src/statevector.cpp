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

#include "qvc/statevector.hpp"

#include <cmath>
#include <string>

#include "qvc/errors.hpp"

namespace qvc {

namespace {

using cplx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Iterate over all (i0, i1 = i0 | 1<<q) amplitude pairs of a qubit and
/// apply a 2x2 update given by the functor f(a0, a1) -> (new a0, new a1).
template <typename F>
void for_each_pair(std::vector<cplx> &amps, int qubit, F &&f) {
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t low = mask - 1;       // bits below the qubit
    const std::size_t high = ~low;          // bits at and above the qubit
    const std::size_t half = amps.size() >> 1;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = ((k & high) << 1) | (k & low);
        const std::size_t i1 = i0 | mask;
        f(amps[i0], amps[i1]);
    }
}

void check_qubit(const StateVector &state, int qubit) {
    if (qubit < 0 || qubit >= state.n_qubits) {
        throw IndexError("qubit index " + std::to_string(qubit) +
                         " out of range for " +
                         std::to_string(state.n_qubits) + "-qubit state");
    }
}

void check_gate_targets(const StateVector &state, const GateOp &gate) {
    const int arity = gate.arity();
    const int qs[3] = {gate.q0, gate.q1, gate.q2};
    for (int i = 0; i < arity; ++i) {
        check_qubit(state, qs[i]);
        for (int j = i + 1; j < arity; ++j) {
            if (qs[i] == qs[j]) {
                throw IndexError("gate targets must be distinct");
            }
        }
    }
}

void apply_h(std::vector<cplx> &amps, int q) {
    for_each_pair(amps, q, [](cplx &a, cplx &b) {
        const cplx t = a;
        a = kInvSqrt2 * (t + b);
        b = kInvSqrt2 * (t - b);
    });
}

void apply_rx(std::vector<cplx> &amps, int q, double theta) {
    const double c = std::cos(theta / 2.0);
    const cplx mis{0.0, -std::sin(theta / 2.0)}; // -i sin(theta/2)
    for_each_pair(amps, q, [&](cplx &a, cplx &b) {
        const cplx t = a;
        a = c * t + mis * b;
        b = mis * t + c * b;
    });
}

void apply_ry(std::vector<cplx> &amps, int q, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    for_each_pair(amps, q, [&](cplx &a, cplx &b) {
        const cplx t = a;
        a = c * t - s * b;
        b = s * t + c * b;
    });
}

void apply_rz(std::vector<cplx> &amps, int q, double theta) {
    const cplx e0 = std::polar(1.0, -theta / 2.0);
    const cplx e1 = std::polar(1.0, theta / 2.0);
    for_each_pair(amps, q, [&](cplx &a, cplx &b) {
        a *= e0;
        b *= e1;
    });
}

void apply_cnot(std::vector<cplx> &amps, int control, int target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t n = amps.size();
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

void apply_toffoli(std::vector<cplx> &amps, int c0, int c1, int target) {
    const std::size_t cmask =
        (std::size_t{1} << c0) | (std::size_t{1} << c1);
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t n = amps.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (((i & cmask) == cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

} // namespace

double StateVector::norm() const {
    double sq = 0.0;
    for (const auto &a : amps) sq += std::norm(a);
    return std::sqrt(sq);
}

StateVector init_zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw CapacityError("n_qubits must be in [1, " +
                            std::to_string(kMaxQubits) + "], got " +
                            std::to_string(n_qubits));
    }
    StateVector state;
    state.n_qubits = n_qubits;
    state.amps.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    state.amps[0] = cplx{1.0, 0.0};
    return state;
}

StateVector amplitude_encode(std::span<const double> features, int n_qubits) {
    StateVector state = init_zero_state(n_qubits);
    if (features.empty()) {
        throw ContractError("amplitude_encode: empty feature vector");
    }
    if (features.size() > state.size()) {
        throw CapacityError("amplitude_encode: " +
                            std::to_string(features.size()) +
                            " features exceed 2^" + std::to_string(n_qubits) +
                            " amplitudes");
    }
    double sq = 0.0;
    for (double v : features) sq += v * v;
    const double norm = std::sqrt(sq);
    if (norm == 0.0) {
        throw DegenerateInputError(
            "amplitude_encode: input vector has zero norm");
    }
    state.amps[0] = cplx{0.0, 0.0};
    for (std::size_t i = 0; i < features.size(); ++i) {
        state.amps[i] = cplx{features[i] / norm, 0.0};
    }
    return state;
}

const char *gate_kind_name(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::Toffoli: return "TOFFOLI";
    }
    return "?";
}

void apply_gate(StateVector &state, const GateOp &gate,
                std::optional<double> angle) {
    check_gate_targets(state, gate);
    if (gate.is_rotation() != angle.has_value()) {
        throw ContractError(std::string("gate ") + gate_kind_name(gate.kind) +
                            (angle ? " takes no angle" : " requires an angle"));
    }
    switch (gate.kind) {
    case GateKind::H:
        apply_h(state.amps, gate.q0);
        break;
    case GateKind::RX:
        apply_rx(state.amps, gate.q0, *angle);
        break;
    case GateKind::RY:
        apply_ry(state.amps, gate.q0, *angle);
        break;
    case GateKind::RZ:
        apply_rz(state.amps, gate.q0, *angle);
        break;
    case GateKind::CNOT:
        apply_cnot(state.amps, gate.q0, gate.q1);
        break;
    case GateKind::Toffoli:
        apply_toffoli(state.amps, gate.q0, gate.q1, gate.q2);
        break;
    }
}

void apply_gate_inverse(StateVector &state, const GateOp &gate,
                        std::optional<double> angle) {
    if (gate.is_rotation()) {
        if (!angle) {
            throw ContractError(std::string("gate ") +
                                gate_kind_name(gate.kind) +
                                " requires an angle");
        }
        apply_gate(state, gate, -*angle);
    } else {
        apply_gate(state, gate, angle);
    }
}

void apply_pauli_x(StateVector &state, int qubit) {
    check_qubit(state, qubit);
    for_each_pair(state.amps, qubit,
                  [](cplx &a, cplx &b) { std::swap(a, b); });
}

void apply_pauli_y(StateVector &state, int qubit) {
    check_qubit(state, qubit);
    const cplx i{0.0, 1.0};
    for_each_pair(state.amps, qubit, [&](cplx &a, cplx &b) {
        const cplx t = a;
        a = -i * b;
        b = i * t;
    });
}

void apply_pauli_z(StateVector &state, int qubit) {
    check_qubit(state, qubit);
    for_each_pair(state.amps, qubit, [](cplx &, cplx &b) { b = -b; });
}

double expectation_z(const StateVector &state, int qubit) {
    check_qubit(state, qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double value = 0.0;
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        const double p = std::norm(state.amps[i]);
        value += (i & mask) ? -p : p;
    }
    return value;
}

std::complex<double> inner_product(const StateVector &a,
                                   const StateVector &b) {
    if (a.size() != b.size()) {
        throw ContractError("inner_product: state sizes differ");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.amps.size(); ++i) {
        acc += std::conj(a.amps[i]) * b.amps[i];
    }
    return acc;
}

} // namespace qvc
