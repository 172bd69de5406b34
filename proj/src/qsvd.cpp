#include "aae/qsvd.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "aae/rng.hpp"

namespace aae {

namespace {

void check_registers(const StateVector& state, int n_s, int n_t) {
    if (n_s < 1 || n_t < 1 || n_s + n_t != state.n_qubits)
        throw std::invalid_argument("qsvd: register sizes do not match the state");
}

// Parity-based expectation of a z-string estimated from n_shot samples.
double sampled_z_product(const Eigen::VectorXd& probs, Eigen::Index mask, int n_shot, Rng& rng) {
    CumulativeTable table(probs);
    long acc = 0;
    for (int l = 0; l < n_shot; ++l) {
        const Eigen::Index j = table.draw(rng);
        acc += (std::popcount(static_cast<std::uint64_t>(j & mask)) & 1) ? -1 : 1;
    }
    return double(acc) / double(n_shot);
}

double cost_from_expectations(const StateVector& state, int n_s, int n_t,
                              const std::function<double(Eigen::Index)>& z_expect) {
    const int n = state.n_qubits;
    const int m = std::min(n_s, n_t);
    auto bit = [n](int qubit) { return Eigen::Index(1) << (n - qubit); };
    double cost = 0.0;
    for (int q = 1; q <= m; ++q) cost += 0.5 * (1.0 - z_expect(bit(q) | bit(q + n_s)));
    const int surplus_begin = n_s >= n_t ? m + 1 : n_s + m + 1;
    const int surplus_end = n_s >= n_t ? n_s : n_s + n_t;
    for (int q = surplus_begin; q <= surplus_end; ++q) cost += 0.5 * (1.0 - z_expect(bit(q)));
    return cost;
}

}  // namespace

SvdAnsatzPair random_svd_pair(int n_s, int n_t, int n_layers, std::uint64_t seed) {
    SvdAnsatzPair pair;
    pair.stock_spec = AnsatzSpec::random_axes(n_s, n_layers, derive_seed(seed, 0x5AE5, 0));
    pair.time_spec = AnsatzSpec::random_axes(n_t, n_layers, derive_seed(seed, 0x5AE5, 1));
    pair.xi = random_params(pair.stock_spec, derive_seed(seed, 0x5AE5, 2));
    pair.xi_prime = random_params(pair.time_spec, derive_seed(seed, 0x5AE5, 3));
    return pair;
}

StateVector apply_svd_pair(const StateVector& data_state, const SvdAnsatzPair& pair) {
    if (pair.stock_spec.n_qubits + pair.time_spec.n_qubits != data_state.n_qubits)
        throw std::invalid_argument("apply_svd_pair: register sizes do not match the state");
    StateVector st = data_state;
    apply_ansatz(st, pair.stock_spec, pair.xi, 0);
    apply_ansatz(st, pair.time_spec, pair.xi_prime, pair.stock_spec.n_qubits);
    return st;
}

double svd_cost(const StateVector& state, int n_s, int n_t) {
    check_registers(state, n_s, n_t);
    const Eigen::VectorXd probs = measure_distribution(state);
    return cost_from_expectations(state, n_s, n_t, [&](Eigen::Index mask) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < probs.size(); ++j)
            acc += (std::popcount(static_cast<std::uint64_t>(j & mask)) & 1) ? -probs[j] : probs[j];
        return acc;
    });
}

double svd_cost_sampled(const StateVector& state, int n_s, int n_t, int n_shot,
                        std::uint64_t seed) {
    check_registers(state, n_s, n_t);
    if (n_shot < 1) throw std::invalid_argument("svd_cost_sampled: n_shot must be >= 1");
    const Eigen::VectorXd probs = measure_distribution(state);
    Rng rng(seed);
    return cost_from_expectations(
        state, n_s, n_t, [&](Eigen::Index mask) { return sampled_z_product(probs, mask, n_shot, rng); });
}

QsvdResult train_qsvd(const StateVector& data_state, const SvdAnsatzPair& start, long iterations,
                      double lr, std::uint64_t seed, const QsvdOptions& opts) {
    const int n_s = start.stock_spec.n_qubits;
    const int n_t = start.time_spec.n_qubits;
    check_registers(data_state, n_s, n_t);
    if (iterations < 0) throw std::invalid_argument("train_qsvd: negative iteration count");

    QsvdResult result;
    result.pair = start;
    result.cost_history.reserve(static_cast<std::size_t>(iterations) + 1);

    const Eigen::Index r_stock = result.pair.xi.size();
    const Eigen::Index r_total = r_stock + result.pair.xi_prime.size();
    AdamState adam(r_total);

    auto evaluate = [&](const SvdAnsatzPair& pair, std::uint64_t shot_tag) {
        const StateVector st = apply_svd_pair(data_state, pair);
        return opts.shot_mode ? svd_cost_sampled(st, n_s, n_t, opts.n_shot,
                                                 derive_seed(seed, 0xC057, shot_tag))
                              : svd_cost(st, n_s, n_t);
    };

    const std::uint64_t shots_per_iter = 2 * static_cast<std::uint64_t>(r_total) + 1;
    for (long it = 0; it < iterations; ++it) {
        const std::uint64_t tag0 = shots_per_iter * static_cast<std::uint64_t>(it);
        result.cost_history.push_back(evaluate(result.pair, tag0));
        Eigen::VectorXd grad(r_total);
        for (Eigen::Index r = 0; r < r_total; ++r) {
            SvdAnsatzPair shifted = result.pair;
            ParamVector& target = r < r_stock ? shifted.xi : shifted.xi_prime;
            const Eigen::Index local = r < r_stock ? r : r - r_stock;
            target[local] += 1.5707963267948966;
            const double plus = evaluate(shifted, tag0 + 1 + 2 * static_cast<std::uint64_t>(r));
            target[local] -= 3.1415926535897932;
            const double minus = evaluate(shifted, tag0 + 2 + 2 * static_cast<std::uint64_t>(r));
            grad[r] = 0.5 * (plus - minus);
        }
        Eigen::VectorXd packed(r_total);
        packed << result.pair.xi, result.pair.xi_prime;
        adam_step(packed, grad, adam, lr, opts.adam);
        result.pair.xi = packed.head(r_stock);
        result.pair.xi_prime = packed.tail(r_total - r_stock);
    }
    result.cost_history.push_back(
        evaluate(result.pair, shots_per_iter * static_cast<std::uint64_t>(iterations)));
    return result;
}

SchmidtSpectrum extract_schmidt_spectrum(const StateVector& state, int n_s, int n_t,
                                         double threshold) {
    check_registers(state, n_s, n_t);
    const int m = std::min(n_s, n_t);
    const Eigen::Index rank_bound = Eigen::Index(1) << m;

    std::vector<double> kept;
    kept.reserve(static_cast<std::size_t>(rank_bound));
    double kept_mass = 0.0;
    for (Eigen::Index mm = 0; mm < rank_bound; ++mm) {
        const Eigen::Index j_s = mm << (n_s - m);
        const Eigen::Index j_t = mm << (n_t - m);
        const Eigen::Index global = (j_s << n_t) | j_t;
        const double mass = std::norm(state.amps[global]);
        if (mass >= threshold) {
            kept.push_back(mass);
            kept_mass += mass;
        }
    }
    if (kept_mass < 0.5)
        throw std::runtime_error("extract_schmidt_spectrum: kept mass below 0.5, qSVD failed");

    SchmidtSpectrum spectrum;
    spectrum.probabilities = Eigen::Map<const Eigen::VectorXd>(kept.data(), Eigen::Index(kept.size()));
    spectrum.residual = 1.0 - kept_mass;
    return spectrum;
}

double svd_entropy(const Eigen::Ref<const Eigen::VectorXd>& spectrum) {
    if ((spectrum.array() < 0.0).any())
        throw std::invalid_argument("svd_entropy: negative spectrum entry");
    if (std::abs(spectrum.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("svd_entropy: spectrum must sum to 1");
    double s = 0.0;
    for (Eigen::Index j = 0; j < spectrum.size(); ++j)
        if (spectrum[j] > 0.0) s -= spectrum[j] * std::log(spectrum[j]);
    return s;
}

}  // namespace aae
