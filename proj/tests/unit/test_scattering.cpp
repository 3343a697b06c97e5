#include <doctest.h>

#include <cmath>

#include "polaron/scattering.hpp"

using namespace polaron;

namespace {

ModelConfig scattering_config(double alpha) {
    ModelConfig config;
    config.num_segments = 301;
    config.line_length = 10.0;
    config.alpha = alpha;
    config.qubit_positions = {5.0};  // mid-line
    return config;
}

// Launch point L/4 leaves the emitter time to de-excite inside the
// pre-revival window.
WavepacketSpec default_packet() {
    WavepacketSpec spec;
    spec.center = 2.5;
    return spec;
}

}  // namespace

TEST_CASE("wavepacket initialisation") {
    const ModelConfig config = scattering_config(0.1);
    const DiscreteBath bath = build_discrete_bath(config);
    const PolaronSolution sol = solve_single_qubit_fixed_point(bath, 1.0);

    SUBCASE("normalised, rightward only, spin idle") {
        const ExcitationVector state = init_wavepacket(default_packet(), bath, sol);
        CHECK(std::abs(state.norm_sq() - 1.0) < 1e-12);
        CHECK(state.spin_amps.cwiseAbs().maxCoeff() == 0.0);
        double backward = 0.0;
        for (Eigen::Index m = 0; m < bath.mode_count(); ++m)
            if (bath.momenta[m] <= 0.0) backward += std::norm(state.photon_amps[m]);
        CHECK(backward == 0.0);
    }

    SUBCASE("a broad packet concentrates on the carrier mode") {
        WavepacketSpec spec = default_packet();
        spec.width = 2.5;  // sigma_x = L/4
        spec.carrier = sol.renormalized_gaps[0];
        const ExcitationVector state = init_wavepacket(spec, bath, sol);
        Eigen::Index top = 0;
        state.photon_amps.cwiseAbs().maxCoeff(&top);
        CHECK(std::abs(bath.momenta[top] - spec.carrier) <
              1.5 * 2.0 * M_PI / bath.length);
        CHECK(std::norm(state.photon_amps[top]) > 0.3);
    }

    SUBCASE("support spilling past the band edge is rejected") {
        WavepacketSpec spec = default_packet();
        spec.width = 0.01;  // sigma_k comparable to the whole band
        CHECK_THROWS_AS(init_wavepacket(spec, bath, sol), ConfigError);
        spec.width = -1.0;
        spec.carrier = 100.0;  // carrier beyond the band edge
        CHECK_THROWS_AS(init_wavepacket(spec, bath, sol), ConfigError);
    }
}

TEST_CASE("coefficient extraction") {
    const ModelConfig config = scattering_config(0.1);
    const DiscreteBath bath = build_discrete_bath(config);
    const PolaronSolution sol = solve_single_qubit_fixed_point(bath, 1.0);
    ExcitationVector initial = init_wavepacket(default_packet(), bath, sol);

    SUBCASE("identical runs give unit transmission") {
        ExcitationVector later = initial;
        later.time = 10.0;
        const ScatteringResult result = extract_coefficients(later, later, initial, bath);
        for (Eigen::Index i = 0; i < result.omega.size(); ++i) {
            if (result.masked[i]) continue;
            CHECK(result.transmission[i] == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(result.reflection[i] == 0.0);
            CHECK(result.theta_t[i] == doctest::Approx(0.0));
        }
    }

    SUBCASE("mismatched time stamps rejected") {
        ExcitationVector later = initial;
        later.time = 1.0;
        CHECK_THROWS_AS(extract_coefficients(later, initial, initial, bath), ConfigError);
    }
}

TEST_CASE("free line is transparent") {
    const ScatteringResult result =
        run_scattering(scattering_config(0.0), default_packet(), 40.0);
    for (Eigen::Index i = 0; i < result.omega.size(); ++i) {
        if (result.masked[i]) continue;
        CHECK(result.transmission[i] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(result.reflection[i] < 1e-20);
        CHECK(std::abs(result.theta_t[i]) < 1e-10);
    }
    CHECK(result.residual_excitation == 0.0);
}

TEST_CASE("resonant scattering off one emitter") {
    // Broad frequency support (the half-Gaussian truncated at k = 0) probes
    // the resonance cleanly while the emitter has time to de-excite.
    const ModelConfig config = scattering_config(0.1);
    WavepacketSpec probe;
    probe.center = 2.5;
    probe.width = 0.8 / config.lambda0();
    const ScatteringResult result = run_scattering(config, probe, 49.5);
    REQUIRE_FALSE(result.residual_excitation_warning);

    const DiscreteBath bath = build_discrete_bath(config);
    const PolaronSolution sol = solve_single_qubit_fixed_point(bath, 1.0);
    const ExcitationVector initial = init_wavepacket(probe, bath, sol);
    const double peak_amp = initial.photon_amps.cwiseAbs().maxCoeff();
    const double quasi_level = std::sqrt(1.0 - 2.0 * config.alpha) * result.delta_r;

    SUBCASE("reflection peaks at the dressed resonance") {
        Eigen::Index peak = 0;
        double best = -1.0;
        for (Eigen::Index m = 0; m < bath.mode_count(); ++m) {
            if (bath.mode_numbers[m] <= 0) continue;
            if (std::abs(initial.photon_amps[m]) < 0.01 * peak_amp) continue;
            for (Eigen::Index i = 0; i < result.omega.size(); ++i)
                if (std::abs(result.omega[i] - bath.frequencies[m]) < 1e-12 &&
                    result.reflection[i] > best) {
                    best = result.reflection[i];
                    peak = i;
                }
        }
        CHECK(best > 0.5);
        CHECK(std::abs(result.omega[peak] - quasi_level) <
              bath.frequency_spacing(result.omega[peak]));
    }

    SUBCASE("elastic unitarity well inside the packet support") {
        // Modes carrying at least 10% of the peak amplitude.
        int checked = 0;
        for (Eigen::Index m = 0; m < bath.mode_count(); ++m) {
            if (bath.mode_numbers[m] <= 0) continue;
            if (std::abs(initial.photon_amps[m]) < 0.1 * peak_amp) continue;
            for (Eigen::Index i = 0; i < result.omega.size(); ++i) {
                if (std::abs(result.omega[i] - bath.frequencies[m]) > 1e-12) continue;
                CHECK(result.transmission[i] + result.reflection[i] ==
                      doctest::Approx(1.0).epsilon(0.02));
                ++checked;
            }
        }
        CHECK(checked >= 5);
    }

    SUBCASE("norm is conserved and the weight stays directional") {
        const EffectiveHamiltonian hp = assemble_hp(sol, bath);
        const ExcitationVector final_state = evolve(initial, hp, 49.5);
        CHECK(std::abs(final_state.norm_sq() - 1.0) < 1e-10);

        double forward = 0.0, backward = 0.0;
        for (Eigen::Index m = 0; m < bath.mode_count(); ++m) {
            const double w = std::norm(final_state.photon_amps[m]);
            (bath.momenta[m] > 0.0 ? forward : backward) += w;
        }
        CHECK(backward + forward == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(backward > 0.05);  // an appreciable reflected fraction
    }
}

TEST_CASE("strong coupling freezes the emitter out") {
    WavepacketSpec probe;
    probe.center = 2.5;
    probe.carrier = 1.0;  // bare-gap carrier for both runs

    const auto reflected_weight = [&](double alpha) {
        const ModelConfig config = scattering_config(alpha);
        const DiscreteBath bath = build_discrete_bath(config);
        const PolaronSolution sol = solve_single_qubit_fixed_point(bath, 1.0);
        const EffectiveHamiltonian hp = assemble_hp(sol, bath);
        const ExcitationVector initial = init_wavepacket(probe, bath, sol);
        const ExcitationVector final_state = evolve(initial, hp, 49.5);
        double backward = 0.0;
        for (Eigen::Index m = 0; m < bath.mode_count(); ++m)
            if (bath.momenta[m] < 0.0) backward += std::norm(final_state.photon_amps[m]);
        return backward;
    };

    const double weak = reflected_weight(0.1);
    const double strong = reflected_weight(0.8);
    CHECK(weak > 5.0 * strong);
}
