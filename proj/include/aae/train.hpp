#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "aae/adam.hpp"
#include "aae/ansatz.hpp"
#include "aae/encoding.hpp"
#include "aae/mmd.hpp"

namespace aae {

// Piecewise-constant learning rate: the rate of the first entry whose
// iteration threshold exceeds the current iteration.
struct LrSchedule {
    std::vector<std::pair<long, double>> entries{{100, 0.1},
                                                 {std::numeric_limits<long>::max(), 0.01}};

    double at(long iteration) const {
        for (const auto& [below, lr] : entries)
            if (iteration < below) return lr;
        return entries.back().second;
    }
};

enum class GradMode { sampled, exact };

// two_basis: L = (L1 + L2)/2, the sign-aware cost. computational_only: L = L1
// alone, which is blind to amplitude signs (the naive baseline).
enum class CostMode { two_basis, computational_only };

struct TrainConfig {
    int n_shot = 400;
    long iterations = 200;
    LrSchedule lr_schedule;
    AdamConfig adam;
    int n_trials = 10;
    std::vector<long> checkpoint_iterations;
    std::uint64_t seed = 0;
    GradMode grad_mode = GradMode::sampled;
    CostMode cost_mode = CostMode::two_basis;
};

struct CostTriple {
    double L = 0.0;
    double L1 = 0.0;
    double L2 = 0.0;
};

struct TrainRecord {
    std::vector<CostTriple> costs;  // costs[i] evaluates the params after i updates
    std::map<long, ParamVector> checkpoints;
    ParamVector final_params;
    std::uint64_t seed = 0;  // per-trial derived seed
    int trial_index = 0;
    double duration_seconds = 0.0;
    CostMode cost_mode = CostMode::two_basis;

    // argmin of L over the final iteration and all checkpoints
    ParamVector best_params;
    long best_iteration = 0;
    double best_cost = 0.0;
};

CostTriple exact_costs(const AnsatzSpec& spec, const ParamVector& params,
                       const TargetEncoding& enc, const Eigen::MatrixXd& K, CostMode cost_mode);

ParamVector shifted_params(const ParamVector& params, Eigen::Index r, int sign);

// Gradient of the training cost via the parameter shift rule. In sampled mode
// every kernel expectation term draws fresh independent streams seeded from
// stream_seed; in exact mode full statevector probabilities are used.
Eigen::VectorXd mmd_gradient(const AnsatzSpec& spec, const ParamVector& params,
                             const TargetEncoding& enc, const TrainConfig& cfg,
                             const KernelConfig& kernel_cfg, GradMode mode,
                             std::uint64_t stream_seed);

// One training trial; cfg.seed is taken as this trial's stream seed.
TrainRecord train_encoder(const TargetEncoding& enc, const AnsatzSpec& spec,
                          const TrainConfig& cfg, const KernelConfig& kernel_cfg);

// cfg.n_trials independent trials with seeds fanned out from cfg.seed, run
// concurrently and returned in trial order.
std::vector<TrainRecord> train_trials(const TargetEncoding& enc, const AnsatzSpec& spec,
                                      const TrainConfig& cfg, const KernelConfig& kernel_cfg);

const TrainRecord& select_best_trial(const std::vector<TrainRecord>& records);

}  // namespace aae
