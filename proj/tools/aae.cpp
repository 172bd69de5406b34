#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aae/finance.hpp"
#include "aae/loader_post.hpp"
#include "aae/report.hpp"
#include "aae/rng.hpp"

namespace {

using namespace aae;

std::string output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("AAE_OUT_DIR"); env && *env) return env;
    return ".";
}

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

Eigen::VectorXd parse_vector(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.find_first_not_of(" \t") == std::string::npos) continue;
        values.push_back(std::stod(cell));
    }
    if (values.empty()) throw std::invalid_argument("--vector: no entries parsed");
    return Eigen::Map<Eigen::VectorXd>(values.data(), Eigen::Index(values.size()));
}

struct EncodeOptions {
    std::string vector_csv;
    std::string data_path;
    int window_index = 0;
    int window_length = 5;
    int layers = 8;
    long iterations = 200;
    int trials = 10;
    int shots = 400;
    std::uint64_t seed = 7;
    bool exact_gradients = false;
    bool naive = false;
    std::vector<long> checkpoints;
    std::string out;
};

int run_encode(const EncodeOptions& opt) {
    TargetEncoding enc;
    nlohmann::json target_info;
    int n_s = 0, n_t = 0;
    if (!opt.data_path.empty()) {
        const StockSeries series = load_prices_file(opt.data_path);
        const Eigen::MatrixXd returns = log_returns(series);
        const int t_returns = opt.window_length - 1;
        if (opt.window_index < 0 || opt.window_index + t_returns > returns.cols())
            throw std::invalid_argument("encode: window does not fit the series");
        const std::string term = series.dates[static_cast<std::size_t>(opt.window_index + t_returns)];
        const MarketWindow window =
            window_coefficients(returns.middleCols(opt.window_index, t_returns), term);
        enc = build_data_vector(window.a);
        while ((Eigen::Index(1) << n_s) < window.a.rows()) ++n_s;
        while ((Eigen::Index(1) << n_t) < window.a.cols()) ++n_t;
        n_s = std::max(n_s, 1);
        n_t = std::max(n_t, 1);
        target_info = {{"source", opt.data_path}, {"term", term}};
    } else {
        if (opt.vector_csv.empty())
            throw std::invalid_argument("encode: need --vector or --data");
        const Eigen::VectorXd raw = parse_vector(opt.vector_csv);
        enc = make_target(normalize(pad_to_power_of_two(raw)));
        target_info = {{"source", "inline"}};
    }
    if (opt.naive) {
        enc = make_target(enc.d.cwiseAbs());
        target_info["naive"] = true;
    }
    target_info["case"] = enc.sign_case == SignCase::Case2 ? "case2" : "case1";
    target_info["d"] = std::vector<double>(enc.d.data(), enc.d.data() + enc.d.size());

    TrainConfig cfg;
    cfg.n_shot = opt.shots;
    cfg.iterations = opt.iterations;
    cfg.n_trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.checkpoint_iterations = opt.checkpoints;
    cfg.grad_mode = opt.exact_gradients ? GradMode::exact : GradMode::sampled;
    cfg.cost_mode = opt.naive ? CostMode::computational_only : CostMode::two_basis;
    const KernelConfig kernel;

    const AnsatzSpec spec = AnsatzSpec::all_y(enc.n_qubits(), opt.layers);
    const std::vector<TrainRecord> records = train_trials(enc, spec, cfg, kernel);
    const TrainRecord& best = select_best_trial(records);

    nlohmann::json doc = record_json(best, spec, cfg, kernel);
    doc["target"] = target_info;
    if (n_s > 0) doc["registers"] = {{"n_s", n_s}, {"n_t", n_t}};
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& rec : records) {
        trials.push_back({{"trial_index", rec.trial_index},
                          {"seed", rec.seed},
                          {"final_L", rec.costs.back().L},
                          {"final_L1", rec.costs.back().L1},
                          {"final_L2", rec.costs.back().L2},
                          {"best_cost", rec.best_cost},
                          {"best_iteration", rec.best_iteration}});
    }
    doc["trials"] = trials;

    const StateVector loader = run_ansatz(spec, best.best_params);
    if (enc.sign_case == SignCase::Case2) doc["overlap"] = overlap(loader, enc.d);

    const std::string dir = output_dir(opt.out);
    const std::string record_path = out_path(dir, "train_record.json");
    write_text_file(record_path, doc.dump(2) + "\n");

    nlohmann::json curves = nlohmann::json::array();
    std::vector<ChartSeries> chart{{"L", {}}, {"L1", {}}, {"L2", {}}};
    for (const auto& c : best.costs) {
        chart[0].values.push_back(c.L);
        chart[1].values.push_back(c.L1);
        chart[2].values.push_back(c.L2);
    }
    write_text_file(out_path(dir, "cost_curve.svg"),
                    svg_line_chart(chart, "training cost, best trial"));

    for (const auto& rec : records)
        std::cout << "trial " << rec.trial_index << ": final L = " << rec.costs.back().L
                  << " (L1 = " << rec.costs.back().L1 << ", L2 = " << rec.costs.back().L2
                  << "), best " << rec.best_cost << " at iteration " << rec.best_iteration
                  << "\n";
    std::cout << "best trial " << best.trial_index << ", record written to " << record_path
              << "\n";
    return 0;
}

struct QsvdCliOptions {
    std::string loader_path;
    int n_s = 0;
    int n_t = 0;
    int layers = 8;
    long iterations = 500;
    double lr = 0.01;
    double threshold = 1e-4;
    std::uint64_t seed = 7;
    bool shot_mode = false;
    int shots = 400;
    std::string out;
};

int run_qsvd(const QsvdCliOptions& opt) {
    std::ifstream in(opt.loader_path);
    if (!in) throw std::invalid_argument("qsvd: cannot open " + opt.loader_path);
    nlohmann::json doc = nlohmann::json::parse(in);

    const auto& ansatz = doc.at("ansatz");
    AnsatzSpec spec;
    spec.n_qubits = ansatz.at("n_qubits").get<int>();
    spec.n_layers = ansatz.at("n_layers").get<int>();
    for (const char c : ansatz.at("axes").get<std::string>())
        spec.rotation_axes.push_back(c == 'x' ? Axis::x : c == 'y' ? Axis::y : Axis::z);
    const std::vector<double> raw_params = doc.at("best").at("params").get<std::vector<double>>();
    const ParamVector params =
        Eigen::Map<const Eigen::VectorXd>(raw_params.data(), Eigen::Index(raw_params.size()));

    StateVector data_state = run_ansatz(spec, params);
    if (doc.at("target").at("case").get<std::string>() == "case2")
        data_state = post_select(data_state).data_state;

    int n_s = opt.n_s, n_t = opt.n_t;
    if ((n_s == 0 || n_t == 0) && doc.contains("registers")) {
        n_s = doc["registers"]["n_s"].get<int>();
        n_t = doc["registers"]["n_t"].get<int>();
    }
    if (n_s <= 0 || n_t <= 0)
        throw std::invalid_argument("qsvd: register split unknown; pass --ns and --nt");

    QsvdOptions qsvd_opts;
    qsvd_opts.shot_mode = opt.shot_mode;
    qsvd_opts.n_shot = opt.shots;
    const SvdAnsatzPair start = random_svd_pair(n_s, n_t, opt.layers, opt.seed);
    const QsvdResult trained =
        train_qsvd(data_state, start, opt.iterations, opt.lr, opt.seed, qsvd_opts);
    const StateVector rotated = apply_svd_pair(data_state, trained.pair);
    const SchmidtSpectrum spectrum = extract_schmidt_spectrum(rotated, n_s, n_t, opt.threshold);
    const double entropy = svd_entropy(spectrum.normalized());

    nlohmann::json result = {
        {"loader", opt.loader_path},
        {"config",
         {{"n_s", n_s},
          {"n_t", n_t},
          {"layers", opt.layers},
          {"iterations", opt.iterations},
          {"lr", opt.lr},
          {"threshold", opt.threshold},
          {"seed", opt.seed},
          {"shot_mode", opt.shot_mode},
          {"n_shot", opt.shots}}},
        {"final_cost", trained.cost_history.back()},
        {"cost_history", trained.cost_history},
        {"spectrum", std::vector<double>(spectrum.probabilities.data(),
                                         spectrum.probabilities.data() + spectrum.probabilities.size())},
        {"residual", spectrum.residual},
        {"entropy", entropy}};

    const std::string dir = output_dir(opt.out);
    const std::string path = out_path(dir, "qsvd_result.json");
    write_text_file(path, result.dump(2) + "\n");
    std::cout << "final cost " << trained.cost_history.back() << ", entropy " << entropy
              << ", result written to " << path << "\n";
    return 0;
}

struct EntropyOptions {
    std::string data_path;
    PipelineConfig cfg;
    bool svg = false;
    std::string out;
};

int run_entropy(const EntropyOptions& opt) {
    const StockSeries series = load_prices_file(opt.data_path);
    const EntropyReport report = run_entropy_pipeline(series, opt.cfg);

    const std::string dir = output_dir(opt.out);
    const std::string json_path = out_path(dir, "entropy_report.json");
    write_text_file(json_path, report_json(report, opt.cfg).dump(2) + "\n");
    write_text_file(out_path(dir, "entropy_report.csv"), report_csv(report));

    if (opt.svg) {
        std::vector<ChartSeries> chart{{"exact", {}}, {"aae", {}}, {"naive", {}}};
        std::vector<std::string> labels;
        for (const auto& t : report.terms) {
            labels.push_back(t.term);
            chart[0].values.push_back(t.exact_entropy);
            chart[1].values.push_back(t.aae_entropy);
            chart[2].values.push_back(t.naive_entropy);
        }
        if (!opt.cfg.baseline) chart.pop_back();
        write_text_file(out_path(dir, "entropy.svg"),
                        svg_line_chart(chart, "SVD entropy by term", labels));
    }

    bool any_error = false;
    for (const auto& t : report.terms) {
        std::cout << t.term << ": exact " << t.exact_entropy;
        if (t.error.empty()) {
            std::cout << ", aae " << t.aae_entropy;
            if (opt.cfg.baseline) std::cout << ", naive " << t.naive_entropy;
            std::cout << ", overlap " << t.overlap;
        } else {
            std::cout << ", FAILED: " << t.error;
            any_error = true;
        }
        std::cout << "\n";
    }
    std::cout << "report written to " << json_path << "\n";
    return any_error ? 1 : 0;
}

int run_verify();

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Amplitude-encoding toolkit: trains data loaders and computes SVD entropy"};
    app.require_subcommand(1);

    EncodeOptions enc_opt;
    auto* encode_cmd = app.add_subcommand("encode", "train an amplitude-encoding loader");
    encode_cmd->add_option("--vector", enc_opt.vector_csv, "comma-separated target vector");
    encode_cmd->add_option("--data", enc_opt.data_path, "price table (CSV)");
    encode_cmd->add_option("--window-index", enc_opt.window_index, "sliding window index");
    encode_cmd->add_option("--window", enc_opt.window_length, "window length in price months");
    encode_cmd->add_option("--layers", enc_opt.layers, "ansatz layers");
    encode_cmd->add_option("--iters", enc_opt.iterations, "training iterations");
    encode_cmd->add_option("--trials", enc_opt.trials, "independent trials");
    encode_cmd->add_option("--shots", enc_opt.shots, "samples per gradient term");
    encode_cmd->add_option("--seed", enc_opt.seed, "master seed");
    encode_cmd->add_option("--checkpoint", enc_opt.checkpoints, "checkpoint iterations");
    encode_cmd->add_flag("--exact-gradients", enc_opt.exact_gradients, "disable shot sampling");
    encode_cmd->add_flag("--naive", enc_opt.naive, "sign-blind baseline cost");
    encode_cmd->add_option("--out", enc_opt.out, "output directory (or AAE_OUT_DIR)");

    QsvdCliOptions qsvd_opt;
    auto* qsvd_cmd = app.add_subcommand("qsvd", "Schmidt stage on a saved loader");
    qsvd_cmd->add_option("--loader", qsvd_opt.loader_path, "train_record.json path")->required();
    qsvd_cmd->add_option("--ns", qsvd_opt.n_s, "stock register qubits");
    qsvd_cmd->add_option("--nt", qsvd_opt.n_t, "time register qubits");
    qsvd_cmd->add_option("--layers", qsvd_opt.layers, "layers per register");
    qsvd_cmd->add_option("--iters", qsvd_opt.iterations, "training iterations");
    qsvd_cmd->add_option("--lr", qsvd_opt.lr, "learning rate");
    qsvd_cmd->add_option("--threshold", qsvd_opt.threshold, "spectrum extraction threshold");
    qsvd_cmd->add_option("--seed", qsvd_opt.seed, "seed for axes and initialization");
    qsvd_cmd->add_flag("--shot-mode", qsvd_opt.shot_mode, "estimate expectations from shots");
    qsvd_cmd->add_option("--shots", qsvd_opt.shots, "samples per expectation in shot mode");
    qsvd_cmd->add_option("--out", qsvd_opt.out, "output directory (or AAE_OUT_DIR)");

    EntropyOptions ent_opt;
    auto* entropy_cmd = app.add_subcommand("entropy", "full pipeline over a price table");
    entropy_cmd->add_option("--data", ent_opt.data_path, "price table (CSV)")->required();
    entropy_cmd->add_option("--window", ent_opt.cfg.window_length, "window length in price months");
    entropy_cmd->add_option("--layers", ent_opt.cfg.n_layers, "loader ansatz layers");
    entropy_cmd->add_option("--iters", ent_opt.cfg.train.iterations, "loader iterations");
    entropy_cmd->add_option("--trials", ent_opt.cfg.train.n_trials, "loader trials per term");
    entropy_cmd->add_option("--shots", ent_opt.cfg.train.n_shot, "samples per gradient term");
    entropy_cmd->add_option("--seed", ent_opt.cfg.train.seed, "master seed");
    entropy_cmd->add_option("--qsvd-layers", ent_opt.cfg.qsvd_layers, "qSVD layers per register");
    entropy_cmd->add_option("--qsvd-iters", ent_opt.cfg.qsvd_iterations, "qSVD iterations");
    entropy_cmd->add_option("--qsvd-lr", ent_opt.cfg.qsvd_lr, "qSVD learning rate");
    entropy_cmd->add_option("--qsvd-attempts", ent_opt.cfg.qsvd_attempts,
                            "extra qSVD seeds tried on extraction failure");
    entropy_cmd->add_option("--threshold", ent_opt.cfg.qsvd_threshold, "spectrum threshold");
    auto* no_baseline =
        entropy_cmd->add_flag("--no-baseline", "skip the sign-blind naive baseline");
    auto* sequential = entropy_cmd->add_flag("--sequential", "run terms one after another");
    entropy_cmd->add_flag("--svg", ent_opt.svg, "emit an SVG chart of the entropy series");
    entropy_cmd->add_option("--out", ent_opt.out, "output directory (or AAE_OUT_DIR)");

    auto* verify_cmd = app.add_subcommand("verify", "run the oracle suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (encode_cmd->parsed()) return run_encode(enc_opt);
        if (qsvd_cmd->parsed()) return run_qsvd(qsvd_opt);
        if (entropy_cmd->parsed()) {
            ent_opt.cfg.baseline = no_baseline->count() == 0;
            ent_opt.cfg.concurrent_terms = sequential->count() == 0;
            return run_entropy(ent_opt);
        }
        if (verify_cmd->parsed()) return run_verify();
    } catch (const std::invalid_argument& err) {
        std::cerr << nlohmann::json{{"error", "usage"}, {"what", err.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << nlohmann::json{{"error", "domain"}, {"what", err.what()}}.dump() << "\n";
        return 1;
    }
    return 2;
}

namespace {

// Dense H^(x)n for the transform oracle.
Eigen::MatrixXd dense_hadamard(int n) {
    Eigen::MatrixXd h1(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    h1 << r, r, r, -r;
    Eigen::MatrixXd h = Eigen::MatrixXd::Ones(1, 1);
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXd next(h.rows() * 2, h.cols() * 2);
        next << h1(0, 0) * h, h1(0, 1) * h, h1(1, 0) * h, h1(1, 1) * h;
        h = next;
    }
    return h;
}

bool verify_fwht() {
    Rng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 1 + int(rng() % 8);
        const Eigen::Index dim = Eigen::Index(1) << n;
        Eigen::VectorXd v(dim);
        for (Eigen::Index j = 0; j < dim; ++j) v[j] = 2.0 * uniform01(rng) - 1.0;
        const Eigen::VectorXd fast = fwht(v);
        if (((dense_hadamard(n) * v) - fast).cwiseAbs().maxCoeff() > 1e-12) return false;
        if ((fwht(fast) - v).cwiseAbs().maxCoeff() > 1e-12) return false;
    }
    return true;
}

bool verify_gradients() {
    Rng rng(12);
    const KernelConfig kernel;
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 2 + int(rng() % 2);
        const AnsatzSpec spec = AnsatzSpec::all_y(n, 2);
        Eigen::VectorXd raw(Eigen::Index(1) << n);
        for (Eigen::Index j = 0; j < raw.size(); ++j) raw[j] = uniform01(rng) + 0.05;
        const TargetEncoding enc = make_target(normalize(raw));
        const ParamVector params = random_params(spec, rng());
        TrainConfig cfg;
        const Eigen::MatrixXd K = kernel_matrix(enc.p.size(), kernel);
        const Eigen::VectorXd grad =
            mmd_gradient(spec, params, enc, cfg, kernel, GradMode::exact, 0);
        Eigen::VectorXd fd(params.size());
        const double step = 1e-5;
        for (Eigen::Index r = 0; r < params.size(); ++r) {
            ParamVector p_hi = params, p_lo = params;
            p_hi[r] += step;
            p_lo[r] -= step;
            fd[r] = (exact_costs(spec, p_hi, enc, K, cfg.cost_mode).L -
                     exact_costs(spec, p_lo, enc, K, cfg.cost_mode).L) /
                    (2 * step);
        }
        if ((grad - fd).cwiseAbs().maxCoeff() > 1e-6) return false;
    }

    // qSVD cost gradients against the same finite-difference oracle
    for (int rep = 0; rep < 5; ++rep) {
        StateVector data = init_zero_state(4);
        for (Eigen::Index j = 0; j < data.dim(); ++j)
            data.amps[j] = std::complex<double>(uniform01(rng) - 0.5, 0.0);
        data.amps.normalize();
        const SvdAnsatzPair pair = random_svd_pair(2, 2, 2, rng());
        auto cost_at = [&](const SvdAnsatzPair& p) {
            return svd_cost(apply_svd_pair(data, p), 2, 2);
        };
        const double step = 1e-5;
        const Eigen::Index r_stock = pair.xi.size();
        for (Eigen::Index r = 0; r < r_stock + pair.xi_prime.size(); ++r) {
            SvdAnsatzPair shifted = pair;
            ParamVector& target = r < r_stock ? shifted.xi : shifted.xi_prime;
            const Eigen::Index local = r < r_stock ? r : r - r_stock;
            target[local] += 1.5707963267948966;
            const double plus = cost_at(shifted);
            target[local] -= 3.1415926535897932;
            const double minus = cost_at(shifted);
            const double shift_grad = 0.5 * (plus - minus);
            target[local] += 1.5707963267948966 + step;
            const double hi = cost_at(shifted);
            target[local] -= 2 * step;
            const double lo = cost_at(shifted);
            if (std::abs(shift_grad - (hi - lo) / (2 * step)) > 1e-6) return false;
        }
    }
    return true;
}

bool verify_sign_uniqueness() {
    Rng rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const Eigen::Index len = rep % 2 == 0 ? 4 : 8;
        Eigen::VectorXd d(len);
        for (Eigen::Index j = 0; j < len; ++j) d[j] = 0.1 + uniform01(rng);
        d = normalize(d);
        const Eigen::VectorXd ph = fwht(d).array().square();
        for (Eigen::Index pattern = 0; pattern < (Eigen::Index(1) << len); ++pattern) {
            Eigen::VectorXd flipped = d;
            for (Eigen::Index j = 0; j < len; ++j)
                if ((pattern >> j) & 1) flipped[j] = -flipped[j];
            const double mismatch =
                (Eigen::VectorXd(fwht(flipped).array().square()) - ph).cwiseAbs().maxCoeff();
            const bool is_identity = pattern == 0 || pattern == (Eigen::Index(1) << len) - 1;
            if (is_identity && mismatch > 1e-10) return false;
            if (!is_identity && mismatch <= 1e-10) return false;
        }
    }
    return true;
}

bool verify_post_selection() {
    Rng rng(14);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 2 + int(rng() % 3);
        Eigen::VectorXd d(Eigen::Index(1) << n);
        for (Eigen::Index j = 0; j < d.size(); ++j) d[j] = uniform01(rng) - 0.5;
        d = normalize(d);
        if (classify_case(d) != SignCase::Case2) continue;
        const Eigen::VectorXd d_bar = extend_case2(d);
        StateVector psi;
        psi.n_qubits = n + 1;
        psi.amps = d_bar.cast<std::complex<double>>();
        const PostSelectResult post = post_select(psi);
        if (std::abs(post.success_probability - 0.5) > 1e-12) return false;
        const Eigen::VectorXd recovered =
            align_global_sign(post.data_state.amps.real(), d);
        if ((recovered - d).cwiseAbs().maxCoeff() > 1e-10) return false;
    }
    return true;
}

bool verify_amplification() {
    Rng rng(15);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 2 + int(rng() % 2);
        Eigen::VectorXd d(Eigen::Index(1) << n);
        for (Eigen::Index j = 0; j < d.size(); ++j) d[j] = uniform01(rng) - 0.5;
        d = normalize(d);
        if (classify_case(d) != SignCase::Case2) continue;
        StateVector psi;
        psi.n_qubits = n + 1;
        psi.amps = extend_case2(d).cast<std::complex<double>>();
        const StateVector amplified = amplitude_amplify(psi);
        double good = 0.0;
        for (Eigen::Index j = 3; j < amplified.dim(); j += 4) good += std::norm(amplified.amps[j]);
        if (std::abs(good - 1.0) > 1e-9) return false;
    }
    return true;
}

int run_verify() {
    struct Suite {
        const char* name;
        bool (*run)();
    };
    const Suite suites[] = {{"fwht_dense_oracle", verify_fwht},
                            {"gradient_finite_difference", verify_gradients},
                            {"sign_pattern_uniqueness", verify_sign_uniqueness},
                            {"post_selection", verify_post_selection},
                            {"amplitude_amplification", verify_amplification}};
    bool all_ok = true;
    for (const auto& suite : suites) {
        const bool ok = suite.run();
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS  " : "FAIL  ") << suite.name << "\n";
    }
    std::cout << (all_ok ? "all suites passed" : "some suites FAILED") << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace
