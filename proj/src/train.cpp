#include "aae/train.hpp"

#include <chrono>
#include <future>
#include <stdexcept>
#include <thread>

#include "aae/rng.hpp"

namespace aae {

namespace {

Eigen::VectorXd hadamard_probs(const StateVector& st) {
    StateVector rotated = st;
    hadamard_all(rotated);
    return measure_distribution(rotated);
}

// Stream tags keep every sampled expectation term on its own RNG stream.
constexpr std::uint64_t kTagInit = 0xA11CE;
constexpr std::uint64_t kTagIteration = 0x17E2A7E;

double sampled_expectation(const CumulativeTable& first, const CumulativeTable& second,
                           const Eigen::MatrixXd& K, int n_shot, std::uint64_t seed_first,
                           std::uint64_t seed_second) {
    Rng rng_a(seed_first);
    Rng rng_b(seed_second);
    double acc = 0.0;
    for (int l = 0; l < n_shot; ++l) acc += K(first.draw(rng_a), second.draw(rng_b));
    return acc / double(n_shot);
}

// One basis's contribution to the shift-rule gradient component:
// E[k(q+, q)] - E[k(q-, q)] - E[k(q+, p)] + E[k(q-, p)], each expectation
// estimated from its own pair of fresh streams (term_base tags the basis).
double sampled_basis_term(const Eigen::VectorXd& q_plus, const Eigen::VectorXd& q_minus,
                          const CumulativeTable& q_table, const CumulativeTable& p_table,
                          const Eigen::MatrixXd& K, int n_shot, std::uint64_t seed,
                          Eigen::Index r, std::uint64_t term_base) {
    const CumulativeTable plus_table(q_plus);
    const CumulativeTable minus_table(q_minus);
    auto stream = [&](std::uint64_t term, std::uint64_t factor) {
        return derive_seed(seed, static_cast<std::uint64_t>(r), term_base + term, factor);
    };
    const double e_pq = sampled_expectation(plus_table, q_table, K, n_shot, stream(0, 0), stream(0, 1));
    const double e_mq = sampled_expectation(minus_table, q_table, K, n_shot, stream(1, 0), stream(1, 1));
    const double e_pp = sampled_expectation(plus_table, p_table, K, n_shot, stream(2, 0), stream(2, 1));
    const double e_mp = sampled_expectation(minus_table, p_table, K, n_shot, stream(3, 0), stream(3, 1));
    return e_pq - e_mq - e_pp + e_mp;
}

}  // namespace

CostTriple exact_costs(const AnsatzSpec& spec, const ParamVector& params,
                       const TargetEncoding& enc, const Eigen::MatrixXd& K, CostMode cost_mode) {
    const StateVector st = run_ansatz(spec, params);
    CostTriple c;
    c.L1 = mmd_exact(measure_distribution(st), enc.p, K);
    c.L2 = mmd_exact(hadamard_probs(st), enc.p_hadamard, K);
    c.L = cost_mode == CostMode::two_basis ? 0.5 * (c.L1 + c.L2) : c.L1;
    return c;
}

ParamVector shifted_params(const ParamVector& params, Eigen::Index r, int sign) {
    if (r < 0 || r >= params.size()) throw std::invalid_argument("shifted_params: index out of range");
    ParamVector out = params;
    out[r] += sign * 1.5707963267948966;
    return out;
}

Eigen::VectorXd mmd_gradient(const AnsatzSpec& spec, const ParamVector& params,
                             const TargetEncoding& enc, const TrainConfig& cfg,
                             const KernelConfig& kernel_cfg, GradMode mode,
                             std::uint64_t stream_seed) {
    if (params.size() != spec.param_count())
        throw std::invalid_argument("mmd_gradient: parameter count mismatch");
    const Eigen::Index dim = enc.p.size();
    const Eigen::MatrixXd K = kernel_matrix(dim, kernel_cfg);
    const bool two_basis = cfg.cost_mode == CostMode::two_basis;

    const StateVector st = run_ansatz(spec, params);
    const Eigen::VectorXd q = measure_distribution(st);
    const Eigen::VectorXd q_h = hadamard_probs(st);

    Eigen::VectorXd grad(params.size());

    if (mode == GradMode::exact) {
        const Eigen::VectorXd resid = K * (q - enc.p);
        const Eigen::VectorXd resid_h = K * (q_h - enc.p_hadamard);
        for (Eigen::Index r = 0; r < params.size(); ++r) {
            const StateVector plus = run_ansatz(spec, shifted_params(params, r, +1));
            const StateVector minus = run_ansatz(spec, shifted_params(params, r, -1));
            const Eigen::VectorXd dq = measure_distribution(plus) - measure_distribution(minus);
            double g = dq.dot(resid);
            if (two_basis) {
                const Eigen::VectorXd dq_h = hadamard_probs(plus) - hadamard_probs(minus);
                g = 0.5 * (g + dq_h.dot(resid_h));
            }
            grad[r] = g;
        }
        return grad;
    }

    const CumulativeTable q_table(q);
    const CumulativeTable qh_table(q_h);
    const CumulativeTable p_table(enc.p);
    const CumulativeTable ph_table(enc.p_hadamard);
    for (Eigen::Index r = 0; r < params.size(); ++r) {
        const StateVector plus = run_ansatz(spec, shifted_params(params, r, +1));
        const StateVector minus = run_ansatz(spec, shifted_params(params, r, -1));
        double g = sampled_basis_term(measure_distribution(plus), measure_distribution(minus),
                                      q_table, p_table, K, cfg.n_shot, stream_seed, r, 0);
        if (two_basis) {
            g += sampled_basis_term(hadamard_probs(plus), hadamard_probs(minus), qh_table,
                                    ph_table, K, cfg.n_shot, stream_seed, r, 4);
            g *= 0.5;
        }
        grad[r] = g;
    }
    return grad;
}

TrainRecord train_encoder(const TargetEncoding& enc, const AnsatzSpec& spec,
                          const TrainConfig& cfg, const KernelConfig& kernel_cfg) {
    if ((Eigen::Index(1) << spec.n_qubits) != enc.p.size())
        throw std::invalid_argument("train_encoder: ansatz width does not match the target");
    const auto t_start = std::chrono::steady_clock::now();

    const Eigen::MatrixXd K = kernel_matrix(enc.p.size(), kernel_cfg);
    TrainRecord rec;
    rec.seed = cfg.seed;
    rec.cost_mode = cfg.cost_mode;
    rec.costs.reserve(static_cast<std::size_t>(cfg.iterations) + 1);

    ParamVector params = random_params(spec, derive_seed(cfg.seed, kTagInit));
    AdamState adam(params.size());
    const std::vector<long> want_checkpoint(cfg.checkpoint_iterations);

    auto checkpoint_if_due = [&](long iteration) {
        for (long c : want_checkpoint)
            if (c == iteration) rec.checkpoints.emplace(iteration, params);
    };

    for (long it = 0; it < cfg.iterations; ++it) {
        rec.costs.push_back(exact_costs(spec, params, enc, K, cfg.cost_mode));
        checkpoint_if_due(it);
        const Eigen::VectorXd grad =
            mmd_gradient(spec, params, enc, cfg, kernel_cfg, cfg.grad_mode,
                         derive_seed(cfg.seed, kTagIteration, static_cast<std::uint64_t>(it)));
        adam_step(params, grad, adam, cfg.lr_schedule.at(it), cfg.adam);
    }
    rec.costs.push_back(exact_costs(spec, params, enc, K, cfg.cost_mode));
    checkpoint_if_due(cfg.iterations);
    rec.final_params = params;

    rec.best_iteration = cfg.iterations;
    rec.best_cost = rec.costs.back().L;
    rec.best_params = params;
    for (const auto& [iteration, saved] : rec.checkpoints) {
        const double cost = rec.costs[static_cast<std::size_t>(iteration)].L;
        if (cost < rec.best_cost) {
            rec.best_cost = cost;
            rec.best_iteration = iteration;
            rec.best_params = saved;
        }
    }

    rec.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rec;
}

std::vector<TrainRecord> train_trials(const TargetEncoding& enc, const AnsatzSpec& spec,
                                      const TrainConfig& cfg, const KernelConfig& kernel_cfg) {
    if (cfg.n_trials < 1) throw std::invalid_argument("train_trials: need at least one trial");
    std::vector<std::future<TrainRecord>> futures;
    futures.reserve(static_cast<std::size_t>(cfg.n_trials));
    for (int t = 0; t < cfg.n_trials; ++t) {
        TrainConfig trial_cfg = cfg;
        trial_cfg.seed = derive_seed(cfg.seed, 0x721A1, static_cast<std::uint64_t>(t));
        futures.push_back(std::async(std::launch::async, [&enc, &spec, trial_cfg, &kernel_cfg] {
            return train_encoder(enc, spec, trial_cfg, kernel_cfg);
        }));
    }
    std::vector<TrainRecord> records;
    records.reserve(futures.size());
    for (int t = 0; t < cfg.n_trials; ++t) {
        records.push_back(futures[static_cast<std::size_t>(t)].get());
        records.back().trial_index = t;
    }
    return records;
}

const TrainRecord& select_best_trial(const std::vector<TrainRecord>& records) {
    if (records.empty()) throw std::invalid_argument("select_best_trial: no records");
    const TrainRecord* best = &records.front();
    for (const auto& rec : records)
        if (rec.best_cost < best->best_cost) best = &rec;
    return *best;
}

}  // namespace aae
