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

#include "qvc/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qvc/errors.hpp"

namespace qvc {

namespace {

void check_args(const CircuitSpec &circuit, const ParameterVector &theta,
                const StateVector &input, std::span<const int> observe) {
    if (static_cast<int>(theta.size()) != circuit.n_params) {
        throw ContractError("parameter vector has " +
                            std::to_string(theta.size()) + " entries, circuit expects " +
                            std::to_string(circuit.n_params));
    }
    for (double v : theta) {
        if (!std::isfinite(v)) {
            throw ContractError("parameter vector contains a non-finite entry");
        }
    }
    if (input.n_qubits != circuit.config.n_qubits) {
        throw ContractError("input state has " +
                            std::to_string(input.n_qubits) +
                            " qubits, circuit expects " +
                            std::to_string(circuit.config.n_qubits));
    }
    for (int q : observe) {
        if (q < 0 || q >= input.n_qubits) {
            throw IndexError("observed qubit " + std::to_string(q) +
                             " out of range");
        }
    }
}

std::optional<double> gate_angle(const GateOp &gate,
                                 const ParameterVector &theta) {
    if (!gate.is_rotation()) return std::nullopt;
    return theta[gate.param_slot];
}

// Generator Pauli of a rotation gate: R(theta) = exp(-i theta P / 2).
void apply_generator_pauli(StateVector &state, const GateOp &gate) {
    switch (gate.kind) {
    case GateKind::RX: apply_pauli_x(state, gate.q0); break;
    case GateKind::RY: apply_pauli_y(state, gate.q0); break;
    case GateKind::RZ: apply_pauli_z(state, gate.q0); break;
    default:
        throw ContractError("gate has no generator");
    }
}

} // namespace

ForwardResult forward(const CircuitSpec &circuit, const ParameterVector &theta,
                      const StateVector &input, std::span<const int> observe) {
    check_args(circuit, theta, input, observe);
    ForwardResult result;
    result.state = input;
    for (const auto &gate : circuit.gates) {
        apply_gate(result.state, gate, gate_angle(gate, theta));
    }
    result.expectations.reserve(observe.size());
    for (int q : observe) {
        result.expectations.push_back(expectation_z(result.state, q));
    }
    return result;
}

GradientMatrix grad_adjoint(const CircuitSpec &circuit,
                            const ParameterVector &theta,
                            const StateVector &input,
                            std::span<const int> observe,
                            std::vector<double> *expectations_out) {
    check_args(circuit, theta, input, observe);

    StateVector psi = input;
    for (const auto &gate : circuit.gates) {
        apply_gate(psi, gate, gate_angle(gate, theta));
    }
    if (expectations_out) {
        expectations_out->clear();
        for (int q : observe) {
            expectations_out->push_back(expectation_z(psi, q));
        }
    }

    // lambda_o starts as Z_q |psi_final> and is dragged backwards together
    // with psi; at gate i both have had gates i+1..N undone.
    std::vector<StateVector> lambdas;
    lambdas.reserve(observe.size());
    for (int q : observe) {
        lambdas.push_back(psi);
        apply_pauli_z(lambdas.back(), q);
    }

    GradientMatrix jac(observe.size(), circuit.n_params);
    StateVector mu;
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        const GateOp &gate = *it;
        const auto angle = gate_angle(gate, theta);
        if (gate.is_rotation()) {
            // d/dtheta exp(-i theta P / 2) |pre> = (-i/2) P |post>, so the
            // Jacobian entry 2 Re<lambda|d psi> reduces to Im<lambda|P|post>.
            mu = psi;
            apply_generator_pauli(mu, gate);
            for (std::size_t o = 0; o < lambdas.size(); ++o) {
                jac.at(o, gate.param_slot) =
                    std::imag(inner_product(lambdas[o], mu));
            }
        }
        apply_gate_inverse(psi, gate, angle);
        for (auto &lambda : lambdas) {
            apply_gate_inverse(lambda, gate, angle);
        }
    }
    return jac;
}

GradientMatrix grad_parameter_shift(const CircuitSpec &circuit,
                                    const ParameterVector &theta,
                                    const StateVector &input,
                                    std::span<const int> observe) {
    check_args(circuit, theta, input, observe);
    GradientMatrix jac(observe.size(), circuit.n_params);
    ParameterVector shifted = theta;
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (int k = 0; k < circuit.n_params; ++k) {
        shifted[k] = theta[k] + half_pi;
        const auto plus = forward(circuit, shifted, input, observe);
        shifted[k] = theta[k] - half_pi;
        const auto minus = forward(circuit, shifted, input, observe);
        shifted[k] = theta[k];
        for (std::size_t o = 0; o < observe.size(); ++o) {
            jac.at(o, k) =
                (plus.expectations[o] - minus.expectations[o]) / 2.0;
        }
    }
    return jac;
}

GradientMatrix grad_finite_diff(const CircuitSpec &circuit,
                                const ParameterVector &theta,
                                const StateVector &input,
                                std::span<const int> observe, double step) {
    if (!(step > 0.0)) {
        throw ContractError("finite-difference step must be positive");
    }
    check_args(circuit, theta, input, observe);
    GradientMatrix jac(observe.size(), circuit.n_params);
    ParameterVector shifted = theta;
    for (int k = 0; k < circuit.n_params; ++k) {
        shifted[k] = theta[k] + step;
        const auto plus = forward(circuit, shifted, input, observe);
        shifted[k] = theta[k] - step;
        const auto minus = forward(circuit, shifted, input, observe);
        shifted[k] = theta[k];
        for (std::size_t o = 0; o < observe.size(); ++o) {
            jac.at(o, k) =
                (plus.expectations[o] - minus.expectations[o]) / (2.0 * step);
        }
    }
    return jac;
}

GradCheckResult grad_check(const GradCheckOptions &options) {
    if (options.n_circuits < 1) {
        throw ContractError("grad_check requires at least one circuit");
    }
    GradCheckResult result;
    for (int i = 0; i < options.n_circuits; ++i) {
        const std::uint64_t circuit_seed = options.seed + i;
        std::mt19937_64 rng(circuit_seed);

        AnsatzConfig config;
        config.n_qubits = 1 + static_cast<int>(rng() % options.max_qubits);
        config.n_layers = 1 + static_cast<int>(rng() % options.max_layers);
        const CircuitSpec circuit = build_circuit(config);

        std::uniform_real_distribution<double> angle(0.0,
                                                     2.0 * std::numbers::pi);
        ParameterVector theta(circuit.n_params);
        for (auto &t : theta) t = angle(rng);

        // random normalized input, all qubits observed
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> features(std::size_t{1} << config.n_qubits);
        for (auto &f : features) f = gauss(rng);
        const StateVector input = amplitude_encode(features, config.n_qubits);

        std::vector<int> observe(config.n_qubits);
        for (int q = 0; q < config.n_qubits; ++q) observe[q] = q;

        auto adjoint = grad_adjoint(circuit, theta, input, observe);
        const auto shift = grad_parameter_shift(circuit, theta, input, observe);
        const auto fd =
            grad_finite_diff(circuit, theta, input, observe, options.fd_step);

        if (options.inject_sign_flip && !adjoint.data.empty()) {
            adjoint.data[0] = -adjoint.data[0] - 1.0;
        }

        for (std::size_t j = 0; j < adjoint.data.size(); ++j) {
            const double dev_as = std::abs(adjoint.data[j] - shift.data[j]);
            const double dev_sf = std::abs(shift.data[j] - fd.data[j]);
            if (dev_as > result.max_adjoint_shift_dev) {
                result.max_adjoint_shift_dev = dev_as;
                result.worst_circuit_seed = circuit_seed;
            }
            if (dev_sf > result.max_shift_fd_dev) {
                result.max_shift_fd_dev = dev_sf;
                result.worst_circuit_seed = circuit_seed;
            }
        }
        ++result.circuits_run;
    }
    result.pass = result.max_adjoint_shift_dev <= options.tol_adjoint_shift &&
                  result.max_shift_fd_dev <= options.tol_shift_fd;
    return result;
}

} // namespace qvc
