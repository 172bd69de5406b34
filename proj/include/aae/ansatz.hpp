#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "aae/statevector.hpp"

namespace aae {

// Layered hardware-efficient circuit: each layer applies one parameterized
// rotation per qubit (axes fixed per gate) followed by a CNOT chain
// 1->2, 2->3, ..., (n-1)->n. Parameter count is n_layers * n_qubits.
struct AnsatzSpec {
    int n_qubits = 0;
    int n_layers = 0;
    std::vector<Axis> rotation_axes;  // length n_layers * n_qubits, layer-major

    static AnsatzSpec all_y(int n_qubits, int n_layers);
    static AnsatzSpec random_axes(int n_qubits, int n_layers, std::uint64_t seed);

    int param_count() const { return n_qubits * n_layers; }
};

using ParamVector = Eigen::VectorXd;

ParamVector random_params(const AnsatzSpec& spec, std::uint64_t seed);

// Applies the circuit to an existing state (register offset allows embedding
// the ansatz on qubits [offset+1, offset+n] of a larger register).
void apply_ansatz(StateVector& st, const AnsatzSpec& spec, const ParamVector& params,
                  int offset = 0);

// The adjoint circuit: layers in reverse, entanglers then negated rotations.
void apply_ansatz_inverse(StateVector& st, const AnsatzSpec& spec, const ParamVector& params,
                          int offset = 0);

// Full circuit from |0...0>.
StateVector run_ansatz(const AnsatzSpec& spec, const ParamVector& params);

}  // namespace aae
