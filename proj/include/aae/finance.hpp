#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aae/encoding.hpp"
#include "aae/qsvd.hpp"
#include "aae/train.hpp"

namespace aae {

struct StockSeries {
    std::vector<std::string> symbols;
    std::vector<std::string> dates;  // month labels, strictly increasing in time
    Eigen::MatrixXd prices;          // one row per symbol, one column per date
};

// Comma-separated table: header row of month labels, then one row per stock,
// first column the symbol.
StockSeries load_prices(std::istream& source);
StockSeries load_prices_file(const std::string& path);

// r_jt = ln s_jt - ln s_j,t-1; one fewer column than prices.
Eigen::MatrixXd log_returns(const StockSeries& series);

struct MarketWindow {
    std::string term;           // label of the window's last month
    Eigen::MatrixXd returns;    // N_s x T slice feeding this window
    Eigen::MatrixXd a;          // normalized coefficients, sum of squares 1
    Eigen::MatrixXd C;          // correlation matrix a a^T, trace 1
};

// Normalizes a T-column return slice: a_jt = (r_jt - mean_j) / (sigma_j
// sqrt(N_s T)) with the population (1/T) variance, and forms C = a a^T.
MarketWindow window_coefficients(const Eigen::Ref<const Eigen::MatrixXd>& returns,
                                 std::string term = {});

// Classical oracle: eigen-decomposition of C, -sum lambda ln lambda over
// eigenvalues above 1e-12.
double exact_svd_entropy(const Eigen::Ref<const Eigen::MatrixXd>& C);

// Flattens a stock-major (stocks and time each zero-padded to powers of two)
// and hands the result to the encoder, reproducing the demo's 5-qubit target.
TargetEncoding build_data_vector(const Eigen::Ref<const Eigen::MatrixXd>& a);

struct TermReport {
    std::string term;
    double exact_entropy = 0.0;
    double aae_entropy = 0.0;
    double naive_entropy = 0.0;  // NaN when the baseline is disabled
    double overlap = 0.0;        // best trial, renormalized post-selected branch
    double l1 = 0.0;             // best trial at its selected iteration
    double l2 = 0.0;
    double qsvd_cost = 0.0;      // final qSVD cost on the AAE branch
    std::string error;           // non-empty if this window failed
};

struct EntropyReport {
    std::vector<TermReport> terms;
};

struct PipelineConfig {
    int window_length = 5;  // price months per sliding window
    int n_layers = 8;
    TrainConfig train;
    KernelConfig kernel;
    int qsvd_layers = 8;
    long qsvd_iterations = 500;
    double qsvd_lr = 0.01;
    double qsvd_threshold = 1e-4;
    int qsvd_attempts = 1;  // extra seeds tried when spectrum extraction fails
    bool baseline = true;
    bool concurrent_terms = true;
};

// The full experiment: slide the window across the series; per term train the
// loader (n_trials, best selected), post-select, run qSVD, read the entropy,
// and compare against the classical oracle; optionally run the sign-blind
// naive loader through the identical qSVD tail. Window failures are recorded
// in the report and do not stop other terms.
EntropyReport run_entropy_pipeline(const StockSeries& series, const PipelineConfig& cfg);

}  // namespace aae
