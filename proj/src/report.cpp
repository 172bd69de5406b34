#include "aae/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace aae {

namespace {

std::string format_double(double value) {
    if (std::isnan(value)) return "";
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

nlohmann::json params_json(const ParamVector& params) {
    return std::vector<double>(params.data(), params.data() + params.size());
}

}  // namespace

nlohmann::json config_json(const KernelConfig& cfg) {
    return {{"sigma_sq", cfg.sigma_sq}, {"scale", cfg.scale}};
}

nlohmann::json config_json(const TrainConfig& cfg) {
    nlohmann::json lr = nlohmann::json::array();
    for (const auto& [below, rate] : cfg.lr_schedule.entries)
        lr.push_back({{"below_iteration", below}, {"rate", rate}});
    return {{"n_shot", cfg.n_shot},
            {"iterations", cfg.iterations},
            {"lr_schedule", lr},
            {"adam", {{"beta1", cfg.adam.beta1}, {"beta2", cfg.adam.beta2}, {"epsilon", cfg.adam.epsilon}}},
            {"n_trials", cfg.n_trials},
            {"checkpoint_iterations", cfg.checkpoint_iterations},
            {"seed", cfg.seed},
            {"grad_mode", cfg.grad_mode == GradMode::exact ? "exact" : "sampled"},
            {"cost_mode",
             cfg.cost_mode == CostMode::two_basis ? "two_basis" : "computational_only"}};
}

nlohmann::json config_json(const PipelineConfig& cfg) {
    return {{"window_length", cfg.window_length},
            {"n_layers", cfg.n_layers},
            {"train", config_json(cfg.train)},
            {"kernel", config_json(cfg.kernel)},
            {"qsvd",
             {{"layers", cfg.qsvd_layers},
              {"iterations", cfg.qsvd_iterations},
              {"lr", cfg.qsvd_lr},
              {"threshold", cfg.qsvd_threshold},
              {"attempts", cfg.qsvd_attempts}}},
            {"baseline", cfg.baseline}};
}

nlohmann::json record_json(const TrainRecord& record, const AnsatzSpec& spec,
                           const TrainConfig& cfg, const KernelConfig& kernel) {
    nlohmann::json costs = nlohmann::json::array();
    for (const auto& c : record.costs) costs.push_back({c.L, c.L1, c.L2});
    nlohmann::json checkpoints = nlohmann::json::object();
    for (const auto& [iteration, params] : record.checkpoints)
        checkpoints[std::to_string(iteration)] = params_json(params);

    std::string axes;
    axes.reserve(spec.rotation_axes.size());
    for (const Axis axis : spec.rotation_axes)
        axes.push_back(axis == Axis::x ? 'x' : axis == Axis::y ? 'y' : 'z');

    return {{"config", config_json(cfg)},
            {"kernel", config_json(kernel)},
            {"ansatz", {{"n_qubits", spec.n_qubits}, {"n_layers", spec.n_layers}, {"axes", axes}}},
            {"seed", record.seed},
            {"trial_index", record.trial_index},
            {"duration_seconds", record.duration_seconds},
            {"costs", costs},
            {"checkpoints", checkpoints},
            {"final_params", params_json(record.final_params)},
            {"best", {{"iteration", record.best_iteration}, {"cost", record.best_cost},
                      {"params", params_json(record.best_params)}}}};
}

nlohmann::json report_json(const EntropyReport& report, const PipelineConfig& cfg) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : report.terms) {
        nlohmann::json row = {{"term", t.term},
                              {"exact", t.exact_entropy},
                              {"aae", t.aae_entropy},
                              {"overlap", t.overlap},
                              {"L1", t.l1},
                              {"L2", t.l2},
                              {"qsvd_cost", t.qsvd_cost}};
        if (!std::isnan(t.naive_entropy)) row["naive"] = t.naive_entropy;
        if (!t.error.empty()) row["error"] = t.error;
        terms.push_back(row);
    }
    return {{"config", config_json(cfg)}, {"terms", terms}};
}

std::string report_csv(const EntropyReport& report) {
    std::string out = "term,exact,aae,naive,overlap,L1,L2\n";
    for (const auto& t : report.terms) {
        out += t.term + ',' + format_double(t.exact_entropy) + ',' +
               format_double(t.aae_entropy) + ',' + format_double(t.naive_entropy) + ',' +
               format_double(t.overlap) + ',' + format_double(t.l1) + ',' +
               format_double(t.l2) + '\n';
    }
    return out;
}

std::string svg_line_chart(const std::vector<ChartSeries>& series, const std::string& title,
                           const std::vector<std::string>& x_labels) {
    const double width = 720, height = 420, left = 70, right = 20, top = 40, bottom = 50;
    double lo = 0.0, hi = 1.0;
    bool first = true;
    std::size_t n_points = 0;
    for (const auto& s : series)
        for (double v : s.values) {
            if (std::isnan(v)) continue;
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            n_points = std::max(n_points, s.values.size());
        }
    if (hi - lo < 1e-9) hi = lo + 1.0;
    const double span = hi - lo;
    lo -= 0.08 * span;
    hi += 0.08 * span;

    auto x_of = [&](std::size_t i) {
        const double denom = n_points > 1 ? double(n_points - 1) : 1.0;
        return left + (width - left - right) * double(i) / denom;
    };
    auto y_of = [&](double v) {
        return height - bottom - (height - top - bottom) * (v - lo) / (hi - lo);
    };

    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      format_double(width) + "\" height=\"" + format_double(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + format_double(width / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";
    svg += "<line x1=\"" + format_double(left) + "\" y1=\"" + format_double(height - bottom) +
           "\" x2=\"" + format_double(width - right) + "\" y2=\"" +
           format_double(height - bottom) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + format_double(left) + "\" y1=\"" + format_double(top) + "\" x2=\"" +
           format_double(left) + "\" y2=\"" + format_double(height - bottom) +
           "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = lo + (hi - lo) * tick / 4.0;
        svg += "<text x=\"" + format_double(left - 8) + "\" y=\"" + format_double(y_of(v) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               format_double(std::round(v * 1000) / 1000) + "</text>\n";
    }
    for (std::size_t i = 0; i < x_labels.size(); ++i) {
        svg += "<text x=\"" + format_double(x_of(i)) + "\" y=\"" +
               format_double(height - bottom + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
               x_labels[i] + "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = palette[k % 5];
        std::string points;
        for (std::size_t i = 0; i < series[k].values.size(); ++i) {
            const double v = series[k].values[i];
            if (std::isnan(v)) continue;
            points += format_double(x_of(i)) + ',' + format_double(y_of(v)) + ' ';
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
        svg += "<text x=\"" + format_double(width - right - 120) + "\" y=\"" +
               format_double(top + 16 * double(k)) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color + "\">" +
               series[k].label + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace aae
