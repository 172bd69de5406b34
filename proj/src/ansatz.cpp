#include "aae/ansatz.hpp"

#include <stdexcept>

#include "aae/rng.hpp"

namespace aae {

AnsatzSpec AnsatzSpec::all_y(int n_qubits, int n_layers) {
    AnsatzSpec spec;
    spec.n_qubits = n_qubits;
    spec.n_layers = n_layers;
    spec.rotation_axes.assign(static_cast<std::size_t>(n_qubits) * n_layers, Axis::y);
    return spec;
}

AnsatzSpec AnsatzSpec::random_axes(int n_qubits, int n_layers, std::uint64_t seed) {
    AnsatzSpec spec;
    spec.n_qubits = n_qubits;
    spec.n_layers = n_layers;
    spec.rotation_axes.resize(static_cast<std::size_t>(n_qubits) * n_layers);
    Rng rng(seed);
    for (auto& axis : spec.rotation_axes) {
        switch (rng() % 3) {
            case 0: axis = Axis::x; break;
            case 1: axis = Axis::y; break;
            default: axis = Axis::z; break;
        }
    }
    return spec;
}

ParamVector random_params(const AnsatzSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    ParamVector params(spec.param_count());
    for (Eigen::Index r = 0; r < params.size(); ++r) params[r] = uniform_angle(rng);
    return params;
}

void apply_ansatz(StateVector& st, const AnsatzSpec& spec, const ParamVector& params, int offset) {
    if (params.size() != spec.param_count())
        throw std::invalid_argument("apply_ansatz: parameter count mismatch");
    if (offset < 0 || offset + spec.n_qubits > st.n_qubits)
        throw std::invalid_argument("apply_ansatz: register does not fit the state");
    Eigen::Index r = 0;
    for (int layer = 0; layer < spec.n_layers; ++layer) {
        for (int q = 1; q <= spec.n_qubits; ++q, ++r)
            apply_rotation(st, spec.rotation_axes[static_cast<std::size_t>(r)], offset + q,
                           params[r]);
        for (int q = 1; q < spec.n_qubits; ++q) apply_cnot(st, offset + q, offset + q + 1);
    }
}

void apply_ansatz_inverse(StateVector& st, const AnsatzSpec& spec, const ParamVector& params,
                          int offset) {
    if (params.size() != spec.param_count())
        throw std::invalid_argument("apply_ansatz_inverse: parameter count mismatch");
    if (offset < 0 || offset + spec.n_qubits > st.n_qubits)
        throw std::invalid_argument("apply_ansatz_inverse: register does not fit the state");
    for (int layer = spec.n_layers - 1; layer >= 0; --layer) {
        for (int q = spec.n_qubits - 1; q >= 1; --q) apply_cnot(st, offset + q, offset + q + 1);
        for (int q = spec.n_qubits; q >= 1; --q) {
            const Eigen::Index r = Eigen::Index(layer) * spec.n_qubits + q - 1;
            apply_rotation(st, spec.rotation_axes[static_cast<std::size_t>(r)], offset + q,
                           -params[r]);
        }
    }
}

StateVector run_ansatz(const AnsatzSpec& spec, const ParamVector& params) {
    StateVector st = init_zero_state(spec.n_qubits);
    apply_ansatz(st, spec, params);
    return st;
}

}  // namespace aae
