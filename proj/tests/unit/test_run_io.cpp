#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "polaron/run_io.hpp"

using namespace polaron;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("model config round trip") {
    ModelConfig config;
    config.kind = BathKind::Discrete;
    config.num_segments = 301;
    config.line_length = 10.0;
    config.alpha = 0.25;
    config.qubit_gaps = {1.0, 1.5};
    config.qubit_positions = {0.0, 4.5};

    const std::string text = model_to_json(config);
    const ModelConfig loaded = model_from_json(text);
    CHECK(loaded.kind == BathKind::Discrete);
    CHECK(loaded.num_segments == config.num_segments);
    CHECK(loaded.line_length == config.line_length);
    CHECK(loaded.alpha == config.alpha);
    CHECK(loaded.qubit_gaps == config.qubit_gaps);
    CHECK(loaded.qubit_positions == config.qubit_positions);
    // derived cutoff recomputed, not taken on faith
    CHECK(loaded.omega_c() == doctest::Approx(config.omega_c()).epsilon(1e-15));
}

TEST_CASE("run file keys are exact") {
    ModelConfig config;
    config.kind = BathKind::Continuum;
    config.cutoff = 7.5;
    const std::string text = model_to_json(config);
    for (const char* key :
         {"\"kind\"", "\"N\"", "\"L_over_lambda0\"", "\"alpha\"", "\"gaps\"", "\"positions\"",
          "\"omega_c\""})
        CHECK(text.find(key) != std::string::npos);

    const ModelConfig loaded = model_from_json(text);
    CHECK(loaded.kind == BathKind::Continuum);
    CHECK(loaded.cutoff == 7.5);
}

TEST_CASE("malformed run files are config errors") {
    CHECK_THROWS_AS(model_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(model_from_json("{\"kind\": \"discrete\"}"), ConfigError);
    CHECK_THROWS_AS(model_from_json(
                        "{\"kind\": \"triangular\", \"N\": 11, \"L_over_lambda0\": 1.0, "
                        "\"alpha\": 0.1, \"gaps\": [1.0], \"positions\": [0.0], \"omega_c\": 1.0}"),
                    ConfigError);
}

TEST_CASE("csv writer is deterministic") {
    const std::string path = "test_io_tmp.csv";
    for (int pass = 0; pass < 2; ++pass) {
        CsvWriter csv(path);
        csv.header({"a", "b"});
        csv.row({1.0 / 3.0, 2.5e-17});
        csv.row({-0.0, 1e300});
        csv.close();
        static std::string first;
        if (pass == 0)
            first = slurp(path);
        else
            CHECK(slurp(path) == first);
    }
    CHECK(slurp(path).substr(0, 5) == "a, b\n");
    std::remove(path.c_str());
}

TEST_CASE("manifest carries the full run description") {
    RunManifest manifest;
    manifest.command = "groundstate";
    manifest.model.alpha = 0.1;
    manifest.output_path = "test_io_tmp2.csv";
    manifest.seed = 42;
    manifest.sweep_parameter = "alpha";
    manifest.sweep_start = 0.0;
    manifest.sweep_stop = 0.9;
    manifest.sweep_steps = 19;
    manifest.wall_time_seconds = 1.5;
    write_manifest(manifest);

    const std::string text = slurp("test_io_tmp2.csv.manifest.json");
    for (const char* needle : {"groundstate", "\"seed\": 42", "\"steps\": 19", "L_over_lambda0"})
        CHECK(text.find(needle) != std::string::npos);
    std::remove("test_io_tmp2.csv.manifest.json");
}
