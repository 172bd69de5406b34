#pragma once

#include <cstdint>
#include <vector>

#include "aae/adam.hpp"
#include "aae/ansatz.hpp"
#include "aae/statevector.hpp"

namespace aae {

// U1 (x) U2 pair rotating the stock and time registers so the Schmidt basis
// lands on the computational basis. Gate axes are drawn once per trial and
// stay fixed during training.
struct SvdAnsatzPair {
    AnsatzSpec stock_spec;
    AnsatzSpec time_spec;
    ParamVector xi;
    ParamVector xi_prime;
};

SvdAnsatzPair random_svd_pair(int n_s, int n_t, int n_layers, std::uint64_t seed);

StateVector apply_svd_pair(const StateVector& data_state, const SvdAnsatzPair& pair);

// Hamming-distance cost: sum over paired qubits (q, q+n_s), q = 1..min(n_s,
// n_t), of (1 - <z z>)/2, plus (1 - <z>)/2 over the trailing surplus qubits
// of the larger register. Zero exactly on Schmidt-form states with the
// surplus forced to |0>.
double svd_cost(const StateVector& state, int n_s, int n_t);

// Shot-based estimate of the same cost for realism studies.
double svd_cost_sampled(const StateVector& state, int n_s, int n_t, int n_shot,
                        std::uint64_t seed);

struct QsvdOptions {
    AdamConfig adam;
    bool shot_mode = false;
    int n_shot = 400;
};

struct QsvdResult {
    SvdAnsatzPair pair;
    std::vector<double> cost_history;  // entry i evaluates the pair after i updates
};

// Adam minimization of svd_cost with parameter-shift gradients evaluated from
// exact expectations (shot mode optional). The seed feeds shot-mode streams.
QsvdResult train_qsvd(const StateVector& data_state, const SvdAnsatzPair& start, long iterations,
                      double lr, std::uint64_t seed, const QsvdOptions& opts = {});

struct SchmidtSpectrum {
    Eigen::VectorXd probabilities;  // kept diagonal masses in basis order
    double residual = 0.0;          // everything else; probabilities sum + residual = 1

    Eigen::VectorXd normalized() const { return probabilities / probabilities.sum(); }
};

// Reads the squared Schmidt coefficients off the trained state's paired
// diagonal, drops entries below threshold into the residual, and fails if
// more than half the mass sits off the diagonal.
SchmidtSpectrum extract_schmidt_spectrum(const StateVector& state, int n_s, int n_t,
                                         double threshold = 1e-4);

// -sum lambda ln lambda over a normalized spectrum.
double svd_entropy(const Eigen::Ref<const Eigen::VectorXd>& spectrum);

}  // namespace aae
