#pragma once

#include <Eigen/Dense>

#include "aae/ansatz.hpp"
#include "aae/statevector.hpp"

namespace aae {

struct PostSelectResult {
    StateVector data_state;         // renormalized n-qubit register
    double success_probability = 0.0;  // branch weight before renormalization
};

// Case-2 readout: Hadamard on the sign ancilla (the last, least significant
// qubit), projection onto its |1> outcome, renormalization of the remainder.
PostSelectResult post_select(const StateVector& state);

// Overlap diagnostic O: magnitude of the inner product between the
// renormalized post-selected branch of the candidate and the target vector.
// An exactly loaded target gives O = 1.
double overlap(const StateVector& candidate, const Eigen::Ref<const Eigen::VectorXd>& target_d);

// One Grover round boosting the branch whose two ancilla qubits read |11>.
// With A = ((I (x) H) U) (x) H the loader's half-weight branch sits at
// amplitude cos(pi/3), so a single reflection pair lifts it to probability 1.
StateVector amplitude_amplify(const AnsatzSpec& loader_spec, const ParamVector& params);

// Same round expressed through the prepared state: A (I - 2|0><0|) A^dag is
// the reflection about A|0>, so only the loader's output state is needed.
StateVector amplitude_amplify(const StateVector& loader_output);

// Flips the candidate's global sign so its largest-magnitude entry agrees
// with the target; reporting convenience only.
Eigen::VectorXd align_global_sign(Eigen::VectorXd candidate,
                                  const Eigen::Ref<const Eigen::VectorXd>& target);

}  // namespace aae
