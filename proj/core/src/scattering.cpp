#include "polaron/scattering.hpp"

#include <cmath>

namespace polaron {

namespace {

struct ResolvedPacket {
    double center = 0.0;  // absolute units
    double width = 0.0;
    double carrier = 0.0;
};

ResolvedPacket resolve_spec(const WavepacketSpec& spec, const ModelConfig& config,
                            double delta_r) {
    ResolvedPacket packet;
    packet.center = (spec.center > 0.0 ? spec.center : config.line_length / 8.0) * config.lambda0();
    packet.width = (spec.width > 0.0 ? spec.width : config.line_length / 20.0) * config.lambda0();
    packet.carrier = spec.carrier > 0.0 ? spec.carrier : delta_r / config.speed;
    return packet;
}

ExcitationVector build_packet(double center, double width, double carrier,
                              const DiscreteBath& bath, Eigen::Index spin_dim) {
    if (!(width > 0.0) || !(carrier > 0.0)) throw ConfigError("packet needs positive width and carrier");

    // Momentum support must not spill past the band edge. The k <= 0 side is
    // simply truncated: the packet is right-moving by construction.
    const double k_edge = M_PI * bath.mode_count() / bath.length;
    const double tail_edge = std::exp(-(k_edge - carrier) * (k_edge - carrier) * width * width);
    if (carrier >= k_edge || tail_edge > 1e-2)
        throw ConfigError("packet too narrow for the mode grid: support exceeds the band");

    ExcitationVector state;
    state.spin_amps = Eigen::VectorXcd::Zero(spin_dim);
    state.photon_amps = Eigen::VectorXcd::Zero(bath.mode_count());
    for (Eigen::Index m = 0; m < bath.mode_count(); ++m) {
        const double k = bath.momenta[m];
        if (!(k > 0.0)) continue;
        const double envelope = std::exp(-(k - carrier) * (k - carrier) * width * width);
        state.photon_amps[m] = envelope * std::exp(complexd(0.0, -k * center));
    }
    const double norm = state.photon_amps.norm();
    if (!(norm > 0.0)) throw ConfigError("packet has no support on the mode grid");
    state.photon_amps /= norm;
    return state;
}

}  // namespace

ExcitationVector init_wavepacket(const WavepacketSpec& spec, const DiscreteBath& bath,
                                 const PolaronSolution& solution) {
    const Eigen::Index spin_dim = solution.spin_state.size() / 2;  // opposite-parity excitations
    const double delta_r = solution.renormalized_gaps[0];
    const double lambda0 = 2.0 * M_PI * bath.speed / solution.gaps[0];
    const double center = (spec.center > 0.0 ? spec.center : bath.length / (8.0 * lambda0)) * lambda0;
    const double width = (spec.width > 0.0 ? spec.width : bath.length / (20.0 * lambda0)) * lambda0;
    const double carrier = spec.carrier > 0.0 ? spec.carrier : delta_r / bath.speed;
    return build_packet(center, width, carrier, bath, spin_dim);
}

ScatteringResult extract_coefficients(const ExcitationVector& scattered,
                                      const ExcitationVector& free_run,
                                      const ExcitationVector& initial, const DiscreteBath& bath) {
    if (scattered.time != free_run.time)
        throw ConfigError("scattered and free states must carry the same time stamp");

    const double peak = initial.photon_amps.cwiseAbs().maxCoeff();
    std::vector<Eigen::Index> pairs;  // indices of positive-momentum modes
    for (Eigen::Index m = 0; m < bath.mode_count(); ++m)
        if (bath.mode_numbers[m] > 0) pairs.push_back(m);

    ScatteringResult result;
    const Eigen::Index n = static_cast<Eigen::Index>(pairs.size());
    result.omega.resize(n);
    result.transmission.setZero(n);
    result.reflection.setZero(n);
    result.theta_t.setZero(n);
    result.theta_r.setZero(n);
    result.masked.assign(n, true);
    result.t_final = scattered.time;

    for (Eigen::Index row = 0; row < n; ++row) {
        const Eigen::Index plus = pairs[row];
        const Eigen::Index minus = bath.index_of(-bath.mode_numbers[plus]);
        result.omega[row] = bath.frequencies[plus];
        const complexd free_amp = free_run.photon_amps[plus];
        if (std::abs(free_amp) < 1e-6 * peak) continue;  // stays masked
        const complexd t = scattered.photon_amps[plus] / free_amp;
        const complexd r = scattered.photon_amps[minus] / free_amp;
        result.transmission[row] = std::norm(t);
        result.reflection[row] = std::norm(r);
        result.theta_t[row] = std::arg(t);
        result.theta_r[row] = std::arg(r);
        result.masked[row] = false;
    }
    result.residual_excitation = scattered.spin_amps.squaredNorm();
    result.residual_excitation_warning = result.residual_excitation > 1e-3;
    return result;
}

ScatteringResult run_scattering(const ModelConfig& config, const WavepacketSpec& spec,
                                double t_final) {
    config.validate();
    if (config.qubit_count() != 1) throw ConfigError("scattering run expects a single emitter");

    const DiscreteBath bath = build_discrete_bath(config);
    const PolaronSolution solution = solve_single_qubit_fixed_point(bath, config.qubit_gaps[0]);
    const ResolvedPacket packet = resolve_spec(spec, config, solution.renormalized_gaps[0]);

    const double revival = bath.length / bath.speed;
    if (!(t_final > 0.0)) t_final = 0.75 * revival;
    if (t_final >= 0.8 * revival)
        throw ConfigError("t_final too close to the revival time; the packet would wrap");
    const double emitter = config.position(0);
    if (std::abs(emitter - packet.center) < 5.0 * packet.width)
        throw ConfigError("packet must start at least 5 sigma away from the emitter");

    const EffectiveHamiltonian h = assemble_hp(solution, bath);
    const ExcitationVector initial = build_packet(packet.center, packet.width, packet.carrier,
                                                  bath, h.spin_dimension());

    const ExcitationVector scattered = evolve(initial, h, t_final);

    ExcitationVector free_run = initial;
    free_run.time = initial.time + t_final;
    for (Eigen::Index m = 0; m < bath.mode_count(); ++m)
        free_run.photon_amps[m] *= std::exp(complexd(0.0, -bath.frequencies[m] * t_final));

    ScatteringResult result = extract_coefficients(scattered, free_run, initial, bath);
    result.alpha = config.alpha;
    result.delta_r = solution.renormalized_gaps[0];
    return result;
}

}  // namespace polaron
