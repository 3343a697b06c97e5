// Command-line runner: groundstate sweeps, emission, spectra, single-photon
// scattering and two-emitter analytics, all emitted as plot-ready CSV with a
// JSON manifest alongside.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polaron/dynamics.hpp"
#include "polaron/model.hpp"
#include "polaron/oracle.hpp"
#include "polaron/run_io.hpp"
#include "polaron/scattering.hpp"
#include "polaron/static_polaron.hpp"
#include "polaron/sweep.hpp"
#include "polaron/two_emitter.hpp"

namespace {

using namespace polaron;

struct Range {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    std::vector<double> points() const {
        std::vector<double> xs(steps);
        for (int i = 0; i < steps; ++i)
            xs[i] = steps > 1 ? start + (stop - start) * i / (steps - 1) : start;
        return xs;
    }
};

Range parse_range(const std::string& text) {
    Range range;
    const auto first = text.find(':');
    if (first == std::string::npos) {
        range.start = range.stop = std::stod(text);
        return range;
    }
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) throw ConfigError("range syntax is start:stop:steps");
    try {
        range.start = std::stod(text.substr(0, first));
        range.stop = std::stod(text.substr(first + 1, second - first - 1));
        range.steps = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        throw ConfigError("cannot parse range: " + text);
    }
    if (range.steps < 1) throw ConfigError("sweep needs at least one step");
    return range;
}

struct CommonFlags {
    std::string alpha = "0.1";
    int segments = 301;
    double length = 10.0;
    double gap = 1.0;
    double position = 0.0;
    std::string output;
    unsigned long long seed = 0;
};

ModelConfig make_config(const CommonFlags& flags, double alpha) {
    ModelConfig config;
    config.kind = BathKind::Discrete;
    config.num_segments = flags.segments;
    config.line_length = flags.length;
    config.alpha = alpha;
    config.qubit_gaps = {flags.gap};
    config.qubit_positions = {flags.position};
    config.validate();
    return config;
}

void add_model_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--alpha", flags.alpha, "coupling strength, value or start:stop:steps");
    cmd->add_option("--N", flags.segments, "number of line segments");
    cmd->add_option("--L", flags.length, "line length in units of lambda0");
    cmd->add_option("--gap", flags.gap, "emitter gap");
    cmd->add_option("--position", flags.position, "emitter position in units of lambda0");
    cmd->add_option("--output,-o", flags.output, "output CSV path");
    cmd->add_option("--seed", flags.seed, "seed for randomized optimizer restarts");
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

int run_groundstate(const CommonFlags& flags) {
    Timer timer;
    const Range sweep = parse_range(flags.alpha);
    const std::vector<double> alphas = sweep.points();
    const std::string output = flags.output.empty() ? "groundstate.csv" : flags.output;

    struct Row {
        double alpha, delta_r, sigma_z, energy, residual;
        bool degenerate;
    };
    std::vector<Row> rows(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t i) {
        const ModelConfig config = make_config(flags, alphas[i]);
        const DiscreteBath bath = build_discrete_bath(config);
        const PolaronSolution sol = solve_single_qubit_fixed_point(bath, flags.gap);
        rows[i] = Row{alphas[i],
                      sol.renormalized_gaps[0],
                      groundstate_polarization(sol)[0],
                      sol.groundstate_energy,
                      sol.residual,
                      sol.degenerate};
    });

    CsvWriter csv(output);
    csv.header({"alpha", "delta_r", "sigma_z", "energy", "residual", "degenerate"});
    for (const Row& r : rows)
        csv.row({r.alpha, r.delta_r, r.sigma_z, r.energy, r.residual, r.degenerate ? 1.0 : 0.0});
    csv.close();

    RunManifest manifest;
    manifest.command = "groundstate";
    manifest.model = make_config(flags, alphas.front());
    manifest.output_path = output;
    manifest.seed = flags.seed;
    manifest.sweep_parameter = "alpha";
    manifest.sweep_start = sweep.start;
    manifest.sweep_stop = sweep.stop;
    manifest.sweep_steps = sweep.steps;
    manifest.wall_time_seconds = timer.seconds();
    write_manifest(manifest);
    return 0;
}

char const* kEmissionDensityPrefix = "d(";

int run_emission(const CommonFlags& flags, double t_max, double dt, bool spectrum_only) {
    Timer timer;
    const Range sweep = parse_range(flags.alpha);
    if (sweep.steps != 1)
        throw ConfigError("emission and spectrum take a single --alpha value");
    const ModelConfig config = make_config(flags, sweep.start);
    const double revival = config.length() / config.speed;
    if (t_max <= 0.0) t_max = 0.8 * revival;
    if (dt <= 0.0) dt = 0.1 / flags.gap;

    const EmissionSeries series = spontaneous_emission_run(config, t_max, dt);
    const std::string output =
        flags.output.empty() ? (spectrum_only ? "spectrum.csv" : "emission.csv") : flags.output;

    CsvWriter csv(output);
    if (spectrum_only) {
        csv.header({"omega_signed", "density"});
        const Eigen::Index last = static_cast<Eigen::Index>(series.times.size()) - 1;
        for (Eigen::Index k = 0; k < series.omega_signed.size(); ++k)
            csv.row({series.omega_signed[k], series.photon_density(last, k)});
    } else {
        std::vector<std::string> columns = {"t", "survival"};
        for (Eigen::Index k = 0; k < series.omega_signed.size(); ++k) {
            char label[48];
            std::snprintf(label, sizeof(label), "%s%.9g)", kEmissionDensityPrefix,
                          series.omega_signed[k]);
            columns.push_back(label);
        }
        csv.header(columns);
        for (std::size_t s = 0; s < series.times.size(); ++s) {
            std::vector<double> row = {series.times[s], series.survival[s]};
            for (Eigen::Index k = 0; k < series.omega_signed.size(); ++k)
                row.push_back(series.photon_density(s, k));
            csv.row(row);
        }
    }
    csv.close();

    RunManifest manifest;
    manifest.command = spectrum_only ? "spectrum" : "emission";
    manifest.model = config;
    manifest.output_path = output;
    manifest.seed = flags.seed;
    manifest.extras = {{"t_max", t_max}, {"dt", dt}, {"delta_r", series.delta_r},
                       {"revival_warning", series.revival_warning ? 1.0 : 0.0}};
    manifest.wall_time_seconds = timer.seconds();
    write_manifest(manifest);
    if (series.revival_warning)
        std::cerr << "warning: t_max extends past 0.8 of the revival time\n";
    return 0;
}

int run_scattering_cmd(const CommonFlags& flags, WavepacketSpec packet, double t_final) {
    Timer timer;
    const Range sweep = parse_range(flags.alpha);
    if (sweep.steps != 1) throw ConfigError("scattering takes a single --alpha value");
    CommonFlags local = flags;
    if (local.position == 0.0) local.position = local.length / 2.0;  // emitter mid-line
    const ModelConfig config = make_config(local, sweep.start);

    const ScatteringResult result = run_scattering(config, packet, t_final);
    const std::string output = flags.output.empty() ? "scattering.csv" : flags.output;

    CsvWriter csv(output);
    csv.header({"omega_signed", "T", "R", "theta_t", "theta_r", "masked"});
    for (Eigen::Index i = result.omega.size() - 1; i >= 0; --i)
        csv.row({-result.omega[i], result.transmission[i], result.reflection[i], result.theta_t[i],
                 result.theta_r[i], result.masked[i] ? 1.0 : 0.0});
    for (Eigen::Index i = 0; i < result.omega.size(); ++i)
        csv.row({result.omega[i], result.transmission[i], result.reflection[i], result.theta_t[i],
                 result.theta_r[i], result.masked[i] ? 1.0 : 0.0});
    csv.close();

    RunManifest manifest;
    manifest.command = "scattering";
    manifest.model = config;
    manifest.output_path = output;
    manifest.seed = flags.seed;
    manifest.extras = {{"t_final", result.t_final},
                       {"delta_r", result.delta_r},
                       {"packet_center", packet.center},
                       {"packet_width", packet.width},
                       {"packet_carrier", packet.carrier},
                       {"residual_excitation", result.residual_excitation}};
    manifest.wall_time_seconds = timer.seconds();
    write_manifest(manifest);
    if (result.residual_excitation_warning)
        std::cerr << "warning: emitter not fully decayed at t_final\n";
    return 0;
}

int run_two_emitter(const CommonFlags& flags, const std::string& distance, double omega_c,
                    const std::string& regime_name) {
    Timer timer;
    const Range alpha_sweep = parse_range(flags.alpha);
    const Range d_sweep = parse_range(distance);
    if (alpha_sweep.steps > 1 && d_sweep.steps > 1)
        throw ConfigError("sweep either --alpha or --distance, not both");
    const DistanceRegime regime = regime_name == "short" ? DistanceRegime::ShortDistance
                                                         : DistanceRegime::LargeDistance;
    if (regime_name != "short" && regime_name != "large")
        throw ConfigError("--regime must be 'large' or 'short'");

    struct Point {
        double alpha, d;
    };
    std::vector<Point> points;
    for (double a : alpha_sweep.points())
        for (double d : d_sweep.points()) points.push_back({a, d});

    const double lambda0 = 2.0 * M_PI / flags.gap;
    const std::string output = flags.output.empty() ? "two_emitter.csv" : flags.output;

    struct Row {
        double alpha, d, gamma_i, gamma_12, delta_i, g12_re, g12_im;
        bool localized;
    };
    std::vector<Row> rows(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        const auto [alpha, d] = points[i];
        const LimitParams lim = limit_params(alpha, flags.gap, omega_c, regime);
        Row row{alpha, d, 0.0, 0.0, 0.0, lim.ising, 0.0, lim.localized};
        if (!lim.localized && lim.delta_r > 0.0) {
            const TwoEmitterParams params =
                TwoEmitterParams::make(alpha, omega_c, 1.0, lim.delta_r, lim.ising, d * lambda0);
            const CollectiveRates rates = collective_rates(params);
            const complexd g12 = coherent_coupling_g12(params, d * lambda0);
            row.gamma_i = rates.individual;
            row.gamma_12 = rates.cross;
            row.delta_i = lamb_shift_two(params);
            row.g12_re = g12.real();
            row.g12_im = g12.imag();
        }
        rows[i] = row;
    });

    CsvWriter csv(output);
    csv.header({"alpha", "d_over_lambda0", "gamma_i", "gamma_12", "delta_i", "g12_real",
                "g12_imag", "localized"});
    for (const Row& r : rows)
        csv.row({r.alpha, r.d, r.gamma_i, r.gamma_12, r.delta_i, r.g12_re, r.g12_im,
                 r.localized ? 1.0 : 0.0});
    csv.close();

    RunManifest manifest;
    manifest.command = "two-emitter";
    ModelConfig model = make_config(flags, alpha_sweep.start);
    model.kind = BathKind::Continuum;
    model.cutoff = omega_c;
    model.qubit_gaps = {flags.gap, flags.gap};
    model.qubit_positions = {0.0, d_sweep.start};
    manifest.model = model;
    manifest.output_path = output;
    manifest.seed = flags.seed;
    manifest.sweep_parameter = alpha_sweep.steps > 1 ? "alpha" : "distance";
    manifest.sweep_start = alpha_sweep.steps > 1 ? alpha_sweep.start : d_sweep.start;
    manifest.sweep_stop = alpha_sweep.steps > 1 ? alpha_sweep.stop : d_sweep.stop;
    manifest.sweep_steps = std::max(alpha_sweep.steps, d_sweep.steps);
    manifest.extras = {{"omega_c", omega_c}, {"regime_short", regime_name == "short" ? 1.0 : 0.0}};
    manifest.wall_time_seconds = timer.seconds();
    write_manifest(manifest);
    return 0;
}

int run_oracle_check() {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    bool all_pass = true;
    const auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        all_pass = all_pass && pass;
    };

    // Enumeration bijection.
    {
        const auto basis = oracle::FockBasis::make(3, 4, 2);
        bool ok = true;
        std::vector<int> occ;
        std::size_t spin = 0;
        for (std::size_t idx = 0; idx < basis.dimension; ++idx) {
            basis.decode(idx, spin, occ);
            if (basis.index(spin, occ) != idx) ok = false;
        }
        record("basis_bijection", ok, "index->state->index over the full basis");
    }

    // Displaced oscillator at zero gap.
    {
        DiscreteBath bath;
        bath.mode_numbers = {1};
        bath.momenta = Eigen::VectorXd::Constant(1, 1.0);
        bath.frequencies = Eigen::VectorXd::Constant(1, 1.0);
        bath.couplings = Eigen::MatrixXcd::Constant(1, 1, 0.3);
        bath.length = 1.0;
        bath.omega_c = 1.0;
        const auto basis = oracle::FockBasis::make(1, 30, 1);
        const auto h = oracle::build_hamiltonian(bath, Eigen::VectorXd::Zero(1), basis);
        const auto gs = oracle::exact_groundstate(h);
        const double expected = -0.3 * 0.3 / 1.0;
        const bool ok = std::abs(gs.energy - expected) < 1e-8;
        record("displaced_oscillator", ok,
               "E0 = " + std::to_string(gs.energy) + " vs " + std::to_string(expected));
    }

    // Variational upper bound on a small instance.
    {
        DiscreteBath bath;
        bath.mode_numbers = {1, 2, 3};
        bath.momenta = Eigen::VectorXd::LinSpaced(3, 0.5, 1.5);
        bath.frequencies.resize(3);
        bath.frequencies << 0.6, 1.1, 1.7;
        bath.couplings.resize(1, 3);
        bath.couplings << 0.15, 0.2, 0.25;
        bath.length = 1.0;
        bath.omega_c = 2.0;
        const PolaronSolution sol = solve_single_qubit_fixed_point(bath, 1.0);
        const auto basis = oracle::FockBasis::make(3, 8, 1);
        const auto h = oracle::build_hamiltonian(bath, Eigen::VectorXd::Constant(1, 1.0), basis);
        const auto gs = oracle::exact_groundstate(h);
        const bool ok = sol.groundstate_energy >= gs.energy - 1e-10;
        record("variational_bound", ok,
               "polaron " + std::to_string(sol.groundstate_energy) + " >= exact " +
                   std::to_string(gs.energy));
    }

    nlohmann::ordered_json out;
    out["checks"] = checks;
    out["all_pass"] = all_pass;
    std::cout << out.dump(2) << std::endl;
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polaron-frame simulator for emitters in an open transmission line"};
    app.require_subcommand(1);

    CommonFlags groundstate_flags, emission_flags, spectrum_flags, scattering_flags,
        two_emitter_flags;
    double t_max = 0.0, dt = 0.0, t_final = 0.0;
    WavepacketSpec packet;
    std::string distance = "1.0";
    std::string regime = "large";
    double omega_c = 100.0;

    CLI::App* groundstate = app.add_subcommand("groundstate", "renormalised gap and polarization sweep");
    add_model_flags(groundstate, groundstate_flags);

    CLI::App* emission = app.add_subcommand("emission", "decay of an initially excited emitter");
    add_model_flags(emission, emission_flags);
    emission->add_option("--t-max", t_max, "evolution window (default 0.8 L/v)");
    emission->add_option("--dt", dt, "sampling step (default 0.1/gap)");

    CLI::App* spectrum = app.add_subcommand("spectrum", "photon density after the decay");
    add_model_flags(spectrum, spectrum_flags);
    spectrum->add_option("--t-max", t_max, "evolution window (default 0.8 L/v)");
    spectrum->add_option("--dt", dt, "sampling step (default 0.1/gap)");

    CLI::App* scattering = app.add_subcommand("scattering", "single-photon transmission/reflection");
    add_model_flags(scattering, scattering_flags);
    scattering->add_option("--t-final", t_final, "collision window (default 0.75 L/v)");
    scattering->add_option("--packet-center", packet.center, "packet centre / lambda0 (default L/8)");
    scattering->add_option("--packet-width", packet.width, "packet width / lambda0 (default L/20)");
    scattering->add_option("--carrier", packet.carrier, "carrier momentum (default Delta_r/v)");

    CLI::App* two_emitter = app.add_subcommand("two-emitter", "collective rates, shifts and couplings");
    add_model_flags(two_emitter, two_emitter_flags);
    two_emitter->add_option("--distance", distance, "separation / lambda0, value or start:stop:steps");
    two_emitter->add_option("--omega-c", omega_c, "cutoff frequency");
    two_emitter->add_option("--regime", regime, "'large' or 'short' separation limit");

    CLI::App* oracle_check = app.add_subcommand("oracle-check", "");
    oracle_check->group("");  // hidden

    try {
        app.parse(argc, argv);
        if (groundstate->parsed()) return run_groundstate(groundstate_flags);
        if (emission->parsed()) return run_emission(emission_flags, t_max, dt, false);
        if (spectrum->parsed()) return run_emission(spectrum_flags, t_max, dt, true);
        if (scattering->parsed()) return run_scattering_cmd(scattering_flags, packet, t_final);
        if (two_emitter->parsed())
            return run_two_emitter(two_emitter_flags, distance, omega_c, regime);
        if (oracle_check->parsed()) return run_oracle_check();
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        nlohmann::json err{{"error", e.what()}, {"kind", "usage"}};
        std::cerr << err.dump() << std::endl;
        return 2;
    } catch (const ConfigError& e) {
        nlohmann::json err{{"error", e.what()}, {"kind", "config"}};
        std::cerr << err.dump() << std::endl;
        return 2;
    } catch (const ConvergenceError& e) {
        nlohmann::json err{{"error", e.what()},
                           {"kind", "convergence"},
                           {"last_value", e.last_value},
                           {"residual", e.residual},
                           {"iterations", e.iterations}};
        std::cerr << err.dump() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}, {"kind", "internal"}};
        std::cerr << err.dump() << std::endl;
        return 1;
    }
    return 0;
}
