#include "polaron/two_emitter.hpp"

#include <cmath>

#include "polaron/expint.hpp"

namespace polaron {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

using complexd = std::complex<double>;

double f_imag(complexd z) { return std::imag(exponential_integral_e1(z) * std::exp(z)); }
double f_real(complexd z) { return std::real(exponential_integral_e1(z) * std::exp(z)); }

double eta_of(double zeta) {
    return (std::sqrt(zeta + 1.0) * (1.0 / zeta + 1.0) +
            std::sqrt(zeta - 1.0) * (1.0 / zeta - 1.0)) /
           std::sqrt(2.0 * zeta);
}

}  // namespace

TwoEmitterParams TwoEmitterParams::make(double alpha, double omega_c, double speed,
                                        double delta_r, double ising, double distance) {
    if (!(delta_r > 0.0)) throw ConfigError("two-emitter parameters need Delta_r > 0");
    if (!(alpha >= 0.0) || !(speed > 0.0) || !(distance >= 0.0))
        throw ConfigError("invalid two-emitter inputs");
    TwoEmitterParams params;
    params.distance = distance;
    params.delta_r = delta_r;
    params.ising = ising;
    params.alpha = alpha;
    params.omega_c = omega_c;
    params.speed = speed;
    params.zeta = std::sqrt(1.0 + ising * ising / (delta_r * delta_r));
    params.eta = eta_of(params.zeta);
    params.chi = params.zeta * params.eta / (1.0 + params.zeta * params.zeta);
    return params;
}

LimitParams limit_params(double alpha, double gap, double omega_c, DistanceRegime regime) {
    if (!(gap > 0.0) || !(omega_c > 0.0)) throw ConfigError("gap and cutoff must be positive");
    const double p = std::exp(1.0 + kEulerGamma);
    LimitParams out;
    if (regime == DistanceRegime::LargeDistance) {
        if (!(alpha >= 0.0) || alpha >= 1.0) {
            if (alpha >= 1.0) return {0.0, 0.0, true, false};
            throw ConfigError("alpha must be non-negative");
        }
        out.ising = 0.0;
        out.delta_r = gap * std::pow(p * gap / omega_c, alpha / (1.0 - alpha));
        return out;
    }
    if (!(alpha >= 0.0)) throw ConfigError("alpha must be non-negative");
    out.validity_warning = alpha * omega_c / gap < 10.0;
    if (alpha == 0.0) return {0.0, gap, false, true};
    out.ising = -alpha * omega_c;
    if (alpha >= 0.5) {
        out.delta_r = 0.0;
        out.localized = true;
        return out;
    }
    const double p0 = std::sqrt(p / alpha);
    out.delta_r = gap * std::pow(p0 * gap / omega_c, 2.0 * alpha / (1.0 - 2.0 * alpha));
    return out;
}

CollectiveRates collective_rates(const TwoEmitterParams& params) {
    CollectiveRates rates;
    rates.individual =
        M_PI * params.alpha * params.delta_r * params.zeta * params.chi * params.chi;
    rates.cross = rates.individual *
                  std::cos(params.delta_r * params.zeta * params.distance / params.speed);
    return rates;
}

double scaling_rate(double alpha, double gap, double omega_c, DistanceRegime regime) {
    if (alpha == 0.0) return 0.0;
    const LimitParams lim = limit_params(alpha, gap, omega_c, regime);
    if (lim.localized) return 0.0;
    if (regime == DistanceRegime::LargeDistance) return M_PI * alpha * lim.delta_r;
    const double zeta0 = std::sqrt(1.0 + std::pow(alpha * omega_c / lim.delta_r, 2));
    const double chi0 = zeta0 * eta_of(zeta0) / (1.0 + zeta0 * zeta0);
    return M_PI * alpha * chi0 * chi0 * zeta0 * lim.delta_r;
}

double lamb_shift_two(const TwoEmitterParams& params) {
    if (params.alpha == 0.0) return 0.0;
    const double zeta = params.zeta;
    const double x = params.delta_r / (params.omega_c * zeta);
    const double z2 = zeta * zeta;
    const double f_l =
        z2 / (1.0 + z2) *
        std::real(std::exp(x) * exponential_integral_e1(x) -
                  std::exp(-x * z2) * exponential_integral_e1(complexd(-x * z2, 0.0)));
    return -params.alpha * params.eta * params.chi / 2.0 * params.delta_r * (1.0 - f_l);
}

complexd coherent_coupling_g12(const TwoEmitterParams& params, double distance) {
    const double zeta = params.zeta;
    const double chi2 = params.chi * params.chi;
    const double phase = params.delta_r * zeta * distance / params.speed;
    const complexd z(params.delta_r / (zeta * params.omega_c),
                     params.delta_r * distance / (params.speed * zeta));
    const double correction_scale = -chi2 * params.alpha * params.delta_r / 2.0;
    const complexd delta_g =
        correction_scale *
        (1.0 + std::imag(z) * f_imag(z) - zeta * (f_real(z) - f_real(-std::conj(z) * zeta * zeta)));
    return params.ising + M_PI / 2.0 * zeta * chi2 * params.alpha * params.delta_r * std::sin(phase) +
           delta_g;
}

Eigen::Vector2cd evolve_two_qubit_markovian(double lamb_shift, double rate, complexd g12,
                                            double cross_rate, const Eigen::Vector2cd& initial,
                                            double t) {
    // M = c I + b sigma^x with c = delta - i gamma/2, b = g12 - i gamma12/2, so
    // exp(-i M t) = e^{-i c t} (cos(b t) I - i sin(b t) sigma^x).
    const complexd c(lamb_shift, -0.5 * rate);
    const complexd b = g12 - complexd(0.0, 0.5 * cross_rate);
    const complexd phase = std::exp(complexd(0.0, -1.0) * c * t);
    const complexd cos_bt = std::cos(b * t);
    const complexd sin_bt = std::sin(b * t);
    Eigen::Vector2cd out;
    out[0] = phase * (cos_bt * initial[0] - complexd(0.0, 1.0) * sin_bt * initial[1]);
    out[1] = phase * (cos_bt * initial[1] - complexd(0.0, 1.0) * sin_bt * initial[0]);
    return out;
}

}  // namespace polaron
