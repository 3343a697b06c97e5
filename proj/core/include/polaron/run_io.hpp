#pragma once

#include <string>
#include <vector>

#include "polaron/model.hpp"

namespace polaron {

/// Flat run-file form of a model; keys: kind, N, L_over_lambda0, alpha, gaps,
/// positions, omega_c. For discrete models omega_c is written for reference
/// and recomputed on load.
std::string model_to_json(const ModelConfig& config);
ModelConfig model_from_json(const std::string& text);

/// Deterministic CSV: fixed "%.12g" formatting, one header line.
class CsvWriter {
public:
    explicit CsvWriter(std::string path);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void close();

private:
    std::string path_;
    std::string buffer_;
    bool open_ = true;
};

struct RunManifest {
    std::string command;
    ModelConfig model;
    std::string output_path;
    unsigned long long seed = 0;
    double sweep_start = 0.0;
    double sweep_stop = 0.0;
    int sweep_steps = 0;
    std::string sweep_parameter;  // empty when the run is a single point
    double wall_time_seconds = 0.0;
    std::vector<std::pair<std::string, double>> extras;
};

/// Written alongside each CSV as <output>.manifest.json.
void write_manifest(const RunManifest& manifest);

}  // namespace polaron
