#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "aae/finance.hpp"
#include "aae/train.hpp"

namespace aae {

nlohmann::json config_json(const KernelConfig& cfg);
nlohmann::json config_json(const TrainConfig& cfg);
nlohmann::json config_json(const PipelineConfig& cfg);

// TrainRecord with its full provenance: the resolved config, the ansatz
// shape, per-iteration cost triples, and checkpointed parameters.
nlohmann::json record_json(const TrainRecord& record, const AnsatzSpec& spec,
                           const TrainConfig& cfg, const KernelConfig& kernel);

// EntropyReport with the resolved pipeline config. Contains no timestamps or
// durations, so identical runs serialize byte-identically.
nlohmann::json report_json(const EntropyReport& report, const PipelineConfig& cfg);

// Flat plot-ready table: term, exact, aae, naive, overlap, L1, L2.
std::string report_csv(const EntropyReport& report);

// Minimal self-contained SVG line chart; one polyline per labeled series.
struct ChartSeries {
    std::string label;
    std::vector<double> values;
};
std::string svg_line_chart(const std::vector<ChartSeries>& series, const std::string& title,
                           const std::vector<std::string>& x_labels = {});

void write_text_file(const std::string& path, const std::string& content);

}  // namespace aae
