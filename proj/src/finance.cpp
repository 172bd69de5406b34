#include "aae/finance.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aae/loader_post.hpp"
#include "aae/rng.hpp"

namespace aae {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos ? std::string{}
                                                   : cell.substr(first, last - first + 1));
    }
    return cells;
}

}  // namespace

StockSeries load_prices(std::istream& source) {
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(source, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.size() < 2) throw std::invalid_argument("load_prices: need a header and at least one stock row");

    StockSeries series;
    const auto& header = rows.front();
    if (header.size() < 3) throw std::invalid_argument("load_prices: need at least two price columns");
    series.dates.assign(header.begin() + 1, header.end());

    const std::size_t n_cols = header.size();
    series.prices.resize(Eigen::Index(rows.size()) - 1, Eigen::Index(n_cols) - 1);
    std::set<std::string> seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != n_cols) throw std::invalid_argument("load_prices: ragged row for " +
                                                              (row.empty() ? "<empty>" : row[0]));
        if (!seen.insert(row[0]).second)
            throw std::invalid_argument("load_prices: duplicate symbol " + row[0]);
        series.symbols.push_back(row[0]);
        for (std::size_t c = 1; c < n_cols; ++c) {
            double value = 0.0;
            try {
                std::size_t used = 0;
                value = std::stod(row[c], &used);
                if (used != row[c].size()) throw std::invalid_argument(row[c]);
            } catch (const std::exception&) {
                throw std::invalid_argument("load_prices: bad price '" + row[c] + "' for " + row[0]);
            }
            if (value <= 0.0)
                throw std::invalid_argument("load_prices: non-positive price for " + row[0]);
            series.prices(Eigen::Index(i) - 1, Eigen::Index(c) - 1) = value;
        }
    }
    return series;
}

StockSeries load_prices_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_prices: cannot open " + path);
    return load_prices(in);
}

Eigen::MatrixXd log_returns(const StockSeries& series) {
    if (series.prices.cols() < 2)
        throw std::invalid_argument("log_returns: need at least two dates");
    const Eigen::MatrixXd logs = series.prices.array().log();
    return logs.rightCols(logs.cols() - 1) - logs.leftCols(logs.cols() - 1);
}

MarketWindow window_coefficients(const Eigen::Ref<const Eigen::MatrixXd>& returns,
                                 std::string term) {
    const Eigen::Index n_s = returns.rows();
    const Eigen::Index t_len = returns.cols();
    if (t_len < 2) throw std::invalid_argument("window_coefficients: need at least two columns");

    MarketWindow window;
    window.term = std::move(term);
    window.returns = returns;
    window.a.resize(n_s, t_len);
    for (Eigen::Index j = 0; j < n_s; ++j) {
        const double mean = returns.row(j).mean();
        const Eigen::RowVectorXd centered = returns.row(j).array() - mean;
        const double sigma = std::sqrt(centered.squaredNorm() / double(t_len));
        if (sigma == 0.0)
            throw std::invalid_argument("window_coefficients: zero return variance in row " +
                                        std::to_string(j));
        window.a.row(j) = centered / (sigma * std::sqrt(double(n_s) * double(t_len)));
    }
    window.C = window.a * window.a.transpose();
    return window;
}

double exact_svd_entropy(const Eigen::Ref<const Eigen::MatrixXd>& C) {
    if (C.rows() != C.cols()) throw std::invalid_argument("exact_svd_entropy: matrix not square");
    if ((C - C.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("exact_svd_entropy: matrix not symmetric");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(C);
    double s = 0.0;
    for (Eigen::Index j = 0; j < C.rows(); ++j) {
        const double lambda = solver.eigenvalues()[j];
        if (lambda < -1e-9) throw std::invalid_argument("exact_svd_entropy: negative eigenvalue");
        if (lambda > 1e-12) s -= lambda * std::log(lambda);
    }
    return s;
}

TargetEncoding build_data_vector(const Eigen::Ref<const Eigen::MatrixXd>& a) {
    if (std::abs(a.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("build_data_vector: coefficients must have unit square sum");
    Eigen::Index rows = 1;
    while (rows < a.rows()) rows <<= 1;
    Eigen::Index cols = 1;
    while (cols < a.cols()) cols <<= 1;
    Eigen::VectorXd flat = Eigen::VectorXd::Zero(rows * cols);
    for (Eigen::Index j = 0; j < a.rows(); ++j)
        for (Eigen::Index t = 0; t < a.cols(); ++t) flat[j * cols + t] = a(j, t);
    return make_target(flat);
}

namespace {

int padded_qubits(Eigen::Index extent) {
    int n = 0;
    Eigen::Index dim = 1;
    while (dim < extent) {
        dim <<= 1;
        ++n;
    }
    return std::max(n, 1);
}

// qSVD tail shared by the AAE branch and the naive baseline: train the pair,
// read the spectrum, return its entropy. Retries with re-derived seeds when
// extraction reports a failed decomposition.
double qsvd_entropy_tail(const StateVector& data_state, int n_s, int n_t,
                         const PipelineConfig& cfg, std::uint64_t seed, double& final_cost) {
    std::exception_ptr last_error;
    const int attempts = std::max(cfg.qsvd_attempts, 1);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        const std::uint64_t attempt_seed = derive_seed(seed, 0x05BD, attempt);
        const SvdAnsatzPair start = random_svd_pair(n_s, n_t, cfg.qsvd_layers, attempt_seed);
        const QsvdResult trained =
            train_qsvd(data_state, start, cfg.qsvd_iterations, cfg.qsvd_lr, attempt_seed);
        final_cost = trained.cost_history.back();
        try {
            const StateVector rotated = apply_svd_pair(data_state, trained.pair);
            const SchmidtSpectrum spectrum =
                extract_schmidt_spectrum(rotated, n_s, n_t, cfg.qsvd_threshold);
            return svd_entropy(spectrum.normalized());
        } catch (const std::runtime_error&) {
            last_error = std::current_exception();
        }
    }
    std::rethrow_exception(last_error);
}

TermReport run_term(const StockSeries& series, const Eigen::MatrixXd& returns, int window,
                    const PipelineConfig& cfg) {
    const int t_returns = cfg.window_length - 1;
    TermReport report;
    report.term = series.dates[static_cast<std::size_t>(window + t_returns)];
    report.naive_entropy = std::numeric_limits<double>::quiet_NaN();
    try {
        const MarketWindow market = window_coefficients(
            returns.middleCols(window, t_returns), report.term);
        report.exact_entropy = exact_svd_entropy(market.C);

        const int n_s = padded_qubits(market.a.rows());
        const int n_t = padded_qubits(market.a.cols());
        const TargetEncoding enc = build_data_vector(market.a);
        const std::uint64_t term_seed =
            derive_seed(cfg.train.seed, 0x7E21, static_cast<std::uint64_t>(window));

        TrainConfig train_cfg = cfg.train;
        train_cfg.seed = term_seed;
        const AnsatzSpec spec = AnsatzSpec::all_y(enc.n_qubits(), cfg.n_layers);
        const std::vector<TrainRecord> records = train_trials(enc, spec, train_cfg, cfg.kernel);
        const TrainRecord& best = select_best_trial(records);
        report.l1 = best.costs[static_cast<std::size_t>(best.best_iteration)].L1;
        report.l2 = best.costs[static_cast<std::size_t>(best.best_iteration)].L2;

        StateVector data_state = run_ansatz(spec, best.best_params);
        if (enc.sign_case == SignCase::Case2) {
            report.overlap = overlap(data_state, enc.d);
            data_state = post_select(data_state).data_state;
        } else {
            report.overlap = std::abs(enc.d.cast<std::complex<double>>().dot(data_state.amps));
        }
        report.aae_entropy =
            qsvd_entropy_tail(data_state, n_s, n_t, cfg, term_seed, report.qsvd_cost);

        if (cfg.baseline) {
            TrainConfig naive_cfg = train_cfg;
            naive_cfg.cost_mode = CostMode::computational_only;
            naive_cfg.seed = derive_seed(term_seed, 0x4A17E);
            const TargetEncoding naive_enc = make_target(enc.d.cwiseAbs());
            const AnsatzSpec naive_spec = AnsatzSpec::all_y(naive_enc.n_qubits(), cfg.n_layers);
            const std::vector<TrainRecord> naive_records =
                train_trials(naive_enc, naive_spec, naive_cfg, cfg.kernel);
            const TrainRecord& naive_best = select_best_trial(naive_records);
            const StateVector naive_loader = run_ansatz(naive_spec, naive_best.best_params);
            double naive_cost = 0.0;
            report.naive_entropy = qsvd_entropy_tail(naive_loader, n_s, n_t, cfg,
                                                     naive_cfg.seed, naive_cost);
        }
    } catch (const std::exception& err) {
        report.error = err.what();
    }
    return report;
}

}  // namespace

EntropyReport run_entropy_pipeline(const StockSeries& series, const PipelineConfig& cfg) {
    if (cfg.window_length < 2)
        throw std::invalid_argument("run_entropy_pipeline: window length must be at least 2");
    const int n_windows = int(series.prices.cols()) - cfg.window_length + 1;
    if (n_windows < 1)
        throw std::invalid_argument("run_entropy_pipeline: series shorter than one window");
    const Eigen::MatrixXd returns = log_returns(series);

    EntropyReport report;
    report.terms.resize(static_cast<std::size_t>(n_windows));
    if (cfg.concurrent_terms) {
        std::vector<std::future<TermReport>> futures;
        futures.reserve(static_cast<std::size_t>(n_windows));
        for (int w = 0; w < n_windows; ++w)
            futures.push_back(std::async(std::launch::async, [&, w] {
                return run_term(series, returns, w, cfg);
            }));
        for (int w = 0; w < n_windows; ++w)
            report.terms[static_cast<std::size_t>(w)] = futures[static_cast<std::size_t>(w)].get();
    } else {
        for (int w = 0; w < n_windows; ++w)
            report.terms[static_cast<std::size_t>(w)] = run_term(series, returns, w, cfg);
    }
    return report;
}

}  // namespace aae
