#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "polaron/errors.hpp"

namespace polaron {

using complexd = std::complex<double>;

enum class BathKind { Discrete, Continuum };

/// Transmission line of length L (periodic) hosting N_s two-level emitters.
/// Units: the first gap and the propagation speed set the scale; lengths and
/// positions are given in units of lambda0 = 2*pi*v / gaps[0].
struct ModelConfig {
    BathKind kind = BathKind::Discrete;
    int num_segments = 301;                        // N (odd recommended)
    double line_length = 10.0;                     // L / lambda0
    double speed = 1.0;                            // v
    double alpha = 0.1;                            // dimensionless coupling
    std::vector<double> qubit_gaps = {1.0};        // Delta_i
    std::vector<double> qubit_positions = {0.0};   // x_i / lambda0, in [0, L/lambda0)
    double cutoff = 0.0;                           // omega_c, continuum only

    double lambda0() const { return 2.0 * M_PI * speed / qubit_gaps.at(0); }
    double length() const { return line_length * lambda0(); }
    double position(std::size_t i) const { return qubit_positions.at(i) * lambda0(); }
    int qubit_count() const { return static_cast<int>(qubit_gaps.size()); }

    /// Discrete: omega_c = v/dx = vN/L is fixed by the discretisation.
    double omega_c() const {
        if (kind == BathKind::Discrete) return speed * num_segments / length();
        return cutoff;
    }

    void validate() const;  // throws ConfigError
};

/// Mode table of the discretised line: k_n = 2*pi*n/L with
/// n in {0, +-1, ..., +-(N-1)/2} for odd N (both band edges kept for even N).
struct DiscreteBath {
    std::vector<int> mode_numbers;   // n, ascending
    Eigen::VectorXd momenta;         // k_n
    Eigen::VectorXd frequencies;     // omega_n >= 0
    Eigen::MatrixXcd couplings;      // g_{i,n}, one row per qubit
    double length = 0.0;             // L, absolute units
    double speed = 1.0;
    double omega_c = 0.0;

    Eigen::Index mode_count() const { return frequencies.size(); }
    int qubit_count() const { return static_cast<int>(couplings.rows()); }

    /// Index of the entry with mode number n; throws if absent.
    Eigen::Index index_of(int n) const;

    /// Local spacing of the positive-branch frequency grid at omega,
    /// d(omega)/dn = (2*pi*v/L) * sqrt(1 - (omega/2*omega_c)^2).
    double frequency_spacing(double omega) const;
};

DiscreteBath build_discrete_bath(const ModelConfig& config);

/// Continuum coupling g(k) = g exp(-omega_k/2 omega_c) sqrt(omega_k/2L) e^{i k x_i}.
complexd continuum_coupling(double k, std::size_t qubit, const ModelConfig& config);

/// Ohmic spectral density. Continuum: pi*alpha*omega*exp(-omega/omega_c).
/// Discrete: the low-frequency form pi*alpha*omega (approximate away from the
/// band edge).
double spectral_density(double omega, const ModelConfig& config);

/// g = sqrt(pi v alpha); alpha = |g|^2 / (pi v).
double coupling_from_alpha(double alpha, double v);
double alpha_from_coupling(double g, double v);

}  // namespace polaron
