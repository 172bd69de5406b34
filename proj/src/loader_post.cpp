#include "aae/loader_post.hpp"

#include <stdexcept>

namespace aae {

namespace {

// Renormalized odd-index branch after H on the last qubit; the branch weight
// is returned through probability.
Eigen::VectorXcd select_last_one(const StateVector& state, double& probability) {
    if (state.n_qubits < 2)
        throw std::invalid_argument("post_select: need a data register plus the sign ancilla");
    StateVector rotated = state;
    apply_hadamard(rotated, rotated.n_qubits);
    Eigen::VectorXcd branch(rotated.dim() / 2);
    for (Eigen::Index j = 0; j < branch.size(); ++j) branch[j] = rotated.amps[2 * j + 1];
    probability = branch.squaredNorm();
    return branch;
}

}  // namespace

PostSelectResult post_select(const StateVector& state) {
    PostSelectResult result;
    Eigen::VectorXcd branch = select_last_one(state, result.success_probability);
    if (result.success_probability <= 0.0)
        throw std::runtime_error("post_select: the |1> branch has zero probability");
    result.data_state.n_qubits = state.n_qubits - 1;
    result.data_state.amps = branch / std::sqrt(result.success_probability);
    return result;
}

double overlap(const StateVector& candidate, const Eigen::Ref<const Eigen::VectorXd>& target_d) {
    if (candidate.dim() != 2 * target_d.size())
        throw std::invalid_argument("overlap: candidate and target dimensions disagree");
    double probability = 0.0;
    const Eigen::VectorXcd branch = select_last_one(candidate, probability);
    if (probability == 0.0) return 0.0;
    const std::complex<double> inner = target_d.cast<std::complex<double>>().dot(branch);
    return std::abs(inner) / std::sqrt(probability);
}

StateVector amplitude_amplify(const AnsatzSpec& loader_spec, const ParamVector& params) {
    const int n_total = loader_spec.n_qubits + 1;

    auto apply_a = [&](StateVector& st) {
        apply_ansatz(st, loader_spec, params);
        apply_hadamard(st, loader_spec.n_qubits);
        apply_hadamard(st, n_total);
    };
    auto apply_a_dagger = [&](StateVector& st) {
        apply_hadamard(st, n_total);
        apply_hadamard(st, loader_spec.n_qubits);
        apply_ansatz_inverse(st, loader_spec, params);
    };

    StateVector st = init_zero_state(n_total);
    apply_a(st);
    for (Eigen::Index j = 3; j < st.dim(); j += 4) st.amps[j] = -st.amps[j];  // I - 2 I(x)|11><11|
    apply_a_dagger(st);
    st.amps[0] = -st.amps[0];  // I - 2|0><0|
    apply_a(st);
    return st;
}

StateVector amplitude_amplify(const StateVector& loader_output) {
    StateVector a;
    a.n_qubits = loader_output.n_qubits + 1;
    StateVector rotated = loader_output;
    apply_hadamard(rotated, rotated.n_qubits);
    a.amps.resize(2 * rotated.dim());
    const double h = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < rotated.dim(); ++j) {
        a.amps[2 * j] = h * rotated.amps[j];
        a.amps[2 * j + 1] = h * rotated.amps[j];
    }
    StateVector out = a;
    for (Eigen::Index j = 3; j < out.dim(); j += 4) out.amps[j] = -out.amps[j];
    const std::complex<double> inner = a.amps.dot(out.amps);
    out.amps -= 2.0 * inner * a.amps;
    return out;
}

Eigen::VectorXd align_global_sign(Eigen::VectorXd candidate,
                                  const Eigen::Ref<const Eigen::VectorXd>& target) {
    Eigen::Index peak = 0;
    target.cwiseAbs().maxCoeff(&peak);
    if (candidate[peak] * target[peak] < 0.0) candidate = -candidate;
    return candidate;
}

}  // namespace aae
