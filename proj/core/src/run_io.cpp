#include "polaron/run_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace polaron {

namespace {

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

}  // namespace

std::string model_to_json(const ModelConfig& config) {
    nlohmann::ordered_json j;
    j["kind"] = config.kind == BathKind::Discrete ? "discrete" : "continuum";
    j["N"] = config.num_segments;
    j["L_over_lambda0"] = config.line_length;
    j["alpha"] = config.alpha;
    j["gaps"] = config.qubit_gaps;
    j["positions"] = config.qubit_positions;
    j["omega_c"] = config.omega_c();
    return j.dump(2);
}

ModelConfig model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed run file: ") + e.what());
    }
    ModelConfig config;
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "discrete")
            config.kind = BathKind::Discrete;
        else if (kind == "continuum")
            config.kind = BathKind::Continuum;
        else
            throw ConfigError("kind must be 'discrete' or 'continuum'");
        config.num_segments = j.at("N").get<int>();
        config.line_length = j.at("L_over_lambda0").get<double>();
        config.alpha = j.at("alpha").get<double>();
        config.qubit_gaps = j.at("gaps").get<std::vector<double>>();
        config.qubit_positions = j.at("positions").get<std::vector<double>>();
        if (config.kind == BathKind::Continuum) config.cutoff = j.at("omega_c").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("run file missing keys: ") + e.what());
    }
    config.validate();
    return config;
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ", ";
        buffer_ += columns[i];
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buffer_ += ", ";
        buffer_ += format_double(values[i]);
    }
    buffer_ += '\n';
}

void CsvWriter::close() {
    if (!open_) return;
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file: " + path_);
    out << buffer_;
    open_ = false;
}

void write_manifest(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["command"] = manifest.command;
    j["model"] = nlohmann::ordered_json::parse(model_to_json(manifest.model));
    j["output"] = manifest.output_path;
    j["seed"] = manifest.seed;
    if (!manifest.sweep_parameter.empty()) {
        j["sweep"] = {{"parameter", manifest.sweep_parameter},
                      {"start", manifest.sweep_start},
                      {"stop", manifest.sweep_stop},
                      {"steps", manifest.sweep_steps}};
    }
    for (const auto& [key, value] : manifest.extras) j[key] = value;
    j["version"] = "0.1.0";
    j["wall_time_seconds"] = manifest.wall_time_seconds;

    std::ofstream out(manifest.output_path + ".manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write manifest for: " + manifest.output_path);
    out << j.dump(2) << '\n';
}

}  // namespace polaron
