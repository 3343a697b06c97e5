#include "polaron/model.hpp"

#include <algorithm>
#include <cmath>

namespace polaron {

namespace {

bool all_finite(const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void ModelConfig::validate() const {
    if (qubit_gaps.empty()) throw ConfigError("at least one qubit required");
    if (qubit_positions.size() != qubit_gaps.size())
        throw ConfigError("qubit_positions and qubit_gaps must have the same length");
    if (!all_finite(qubit_gaps) || !all_finite(qubit_positions))
        throw ConfigError("non-finite qubit parameters");
    if (!std::isfinite(line_length) || !std::isfinite(speed) || !std::isfinite(alpha))
        throw ConfigError("non-finite line parameters");
    if (num_segments < 2) throw ConfigError("num_segments must be >= 2");
    if (line_length <= 0.0) throw ConfigError("line_length must be positive");
    if (speed <= 0.0) throw ConfigError("speed must be positive");
    if (alpha < 0.0) throw ConfigError("alpha must be non-negative");
    for (double gap : qubit_gaps)
        if (gap <= 0.0) throw ConfigError("qubit gaps must be positive");
    for (double x : qubit_positions)
        if (x < 0.0 || x >= line_length) throw ConfigError("qubit positions must lie in [0, L)");
    if (kind == BathKind::Continuum && !(cutoff > 0.0 && std::isfinite(cutoff)))
        throw ConfigError("continuum model requires a positive cutoff");
}

Eigen::Index DiscreteBath::index_of(int n) const {
    auto it = std::lower_bound(mode_numbers.begin(), mode_numbers.end(), n);
    if (it == mode_numbers.end() || *it != n) throw ConfigError("mode number not in bath");
    return static_cast<Eigen::Index>(it - mode_numbers.begin());
}

double DiscreteBath::frequency_spacing(double omega) const {
    double u = omega / (2.0 * omega_c);
    u = std::min(std::abs(u), 1.0);
    return (2.0 * M_PI * speed / length) * std::sqrt(1.0 - u * u);
}

DiscreteBath build_discrete_bath(const ModelConfig& config) {
    config.validate();
    if (config.kind != BathKind::Discrete)
        throw ConfigError("build_discrete_bath requires a discrete model");

    const int n_segments = config.num_segments;
    // Odd N: n in {-(N-1)/2, ..., (N-1)/2}. Even N keeps both +-N/2 entries.
    const int n_max = n_segments / 2;
    const int n_min = (n_segments % 2 == 0) ? -n_segments / 2 : -(n_segments - 1) / 2;

    DiscreteBath bath;
    bath.length = config.length();
    bath.speed = config.speed;
    bath.omega_c = config.omega_c();

    const Eigen::Index modes = n_max - n_min + 1;
    bath.mode_numbers.resize(modes);
    bath.momenta.resize(modes);
    bath.frequencies.resize(modes);
    bath.couplings.resize(config.qubit_count(), modes);

    const double g = coupling_from_alpha(config.alpha, config.speed);
    for (Eigen::Index m = 0; m < modes; ++m) {
        const int n = n_min + static_cast<int>(m);
        bath.mode_numbers[m] = n;
        bath.momenta[m] = 2.0 * M_PI * n / bath.length;
        const double phase_arg = 2.0 * M_PI * n / n_segments;
        bath.frequencies[m] = bath.omega_c * std::sqrt(std::max(0.0, 2.0 - 2.0 * std::cos(phase_arg)));
        const double magnitude = g * std::sqrt(bath.frequencies[m] / (2.0 * bath.length));
        for (int i = 0; i < config.qubit_count(); ++i) {
            const double x = config.position(static_cast<std::size_t>(i));
            bath.couplings(i, m) = magnitude * std::exp(complexd(0.0, bath.momenta[m] * x));
        }
    }
    return bath;
}

complexd continuum_coupling(double k, std::size_t qubit, const ModelConfig& config) {
    config.validate();
    if (config.kind != BathKind::Continuum)
        throw ConfigError("continuum_coupling requires a continuum model");
    if (!std::isfinite(k)) throw ConfigError("non-finite momentum");

    const double omega = config.speed * std::abs(k);
    const double g = coupling_from_alpha(config.alpha, config.speed);
    const double magnitude =
        g * std::exp(-omega / (2.0 * config.cutoff)) * std::sqrt(omega / (2.0 * config.length()));
    return magnitude * std::exp(complexd(0.0, k * config.position(qubit)));
}

double spectral_density(double omega, const ModelConfig& config) {
    config.validate();
    if (!(omega >= 0.0)) throw ConfigError("spectral density defined for omega >= 0");
    const double ohmic = M_PI * config.alpha * omega;
    if (config.kind == BathKind::Continuum) return ohmic * std::exp(-omega / config.cutoff);
    return ohmic;
}

double coupling_from_alpha(double alpha, double v) {
    if (!(alpha >= 0.0) || !(v > 0.0)) throw ConfigError("alpha >= 0 and v > 0 required");
    return std::sqrt(M_PI * v * alpha);
}

double alpha_from_coupling(double g, double v) {
    if (!std::isfinite(g) || !(v > 0.0)) throw ConfigError("finite g and v > 0 required");
    return g * g / (M_PI * v);
}

}  // namespace polaron
