#pragma once

#include <vector>

#include <Eigen/Dense>

#include "polaron/dynamics.hpp"
#include "polaron/model.hpp"
#include "polaron/static_polaron.hpp"

namespace polaron {

/// Gaussian single-photon packet travelling to the right. Lengths are in the
/// same lambda0 units as the model; non-positive fields pick the defaults
/// center = L/8, width = L/20, carrier = Delta_r / v.
struct WavepacketSpec {
    double center = -1.0;   // x0 / lambda0
    double width = -1.0;    // sigma_x / lambda0
    double carrier = -1.0;  // k0, absolute inverse-length units
};

struct ScatteringResult {
    Eigen::VectorXd omega;         // one entry per +-k pair, ascending
    Eigen::VectorXd transmission;  // |t_n|^2
    Eigen::VectorXd reflection;    // |r_n|^2
    Eigen::VectorXd theta_t;
    Eigen::VectorXd theta_r;
    std::vector<bool> masked;      // packet support too weak to divide
    double t_final = 0.0;
    double alpha = 0.0;
    double delta_r = 0.0;
    double residual_excitation = 0.0;
    bool residual_excitation_warning = false;
};

/// alpha_k(0) ~ exp(-(k - k0)^2 sigma_x^2) exp(-i k x0) on k > 0 only,
/// normalised; the spin stays in the groundstate. Packets whose momentum
/// support spills out of the positive branch are rejected.
ExcitationVector init_wavepacket(const WavepacketSpec& spec, const DiscreteBath& bath,
                                 const PolaronSolution& solution);

/// Two-run protocol: evolve the same packet with and without the emitter and
/// divide amplitudes mode by mode, which cancels the free phases exactly.
ScatteringResult run_scattering(const ModelConfig& config, const WavepacketSpec& spec,
                                double t_final);

/// Per-mode coefficients t_k = a^scat_{+k}/a^free_{+k}, r_k = a^scat_{-k}/a^free_{+k}.
/// Modes with |a^free| below 1e-6 of the packet maximum are masked out.
ScatteringResult extract_coefficients(const ExcitationVector& scattered,
                                      const ExcitationVector& free_run,
                                      const ExcitationVector& initial, const DiscreteBath& bath);

}  // namespace polaron
