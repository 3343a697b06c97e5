#pragma once

#include <complex>

#include <Eigen/Dense>

#include "polaron/errors.hpp"

namespace polaron {

/// Derived quantities for a pair of identical emitters a distance d apart:
/// zeta = sqrt(1 + J_I^2/Delta_r^2), eta and chi as fixed functions of zeta.
/// At J_I = 0 they reduce to (zeta, eta, chi) = (1, 2, 1).
struct TwoEmitterParams {
    double distance = 0.0;  // d, absolute units
    double delta_r = 0.0;
    double ising = 0.0;     // J_I
    double zeta = 1.0;
    double eta = 2.0;
    double chi = 1.0;
    double alpha = 0.0;
    double omega_c = 0.0;
    double speed = 1.0;

    static TwoEmitterParams make(double alpha, double omega_c, double speed, double delta_r,
                                 double ising, double distance);
};

enum class DistanceRegime { LargeDistance, ShortDistance };

struct LimitParams {
    double ising = 0.0;
    double delta_r = 0.0;
    bool localized = false;
    bool validity_warning = false;  // short-distance form needs alpha w_c / Delta >> 1
};

/// Closed-form (J_I, Delta_r) in the two solvable separations. Large d:
/// J_I = 0 with the single-emitter renormalisation. Short d: J_I = -alpha w_c,
/// Delta_r = Delta (p0 Delta/w_c)^{2 alpha/(1-2 alpha)}, p0 = sqrt(p/alpha).
LimitParams limit_params(double alpha, double gap, double omega_c, DistanceRegime regime);

struct CollectiveRates {
    double individual = 0.0;  // gamma_i
    double cross = 0.0;       // gamma_12
};

/// gamma_i = J(Delta_r zeta) chi^2 and gamma_12 = gamma_i cos(Delta_r zeta d / v),
/// with the plain Ohmic J = pi alpha w.
CollectiveRates collective_rates(const TwoEmitterParams& params);

/// Scaling-limit individual rate in the chosen regime.
double scaling_rate(double alpha, double gap, double omega_c, DistanceRegime regime);

/// delta_1 = delta_2 = -alpha (eta chi / 2) Delta_r (1 - f_L(Delta_r / (w_c zeta))),
/// f_L built from the exponential integral; its negative-axis evaluation uses
/// the real principal value.
double lamb_shift_two(const TwoEmitterParams& params);

/// g_12 = J_I + (pi/2) zeta chi^2 alpha Delta_r sin(Delta_r zeta d / v) + delta_g12.
/// Real up to roundoff; returned as complex so branch effects stay visible.
std::complex<double> coherent_coupling_g12(const TwoEmitterParams& params, double distance);

/// Amplitude dynamics i da/dt = M a for the damped pair, by closed-form 2x2
/// exponential. Eigenmodes are the symmetric/antisymmetric combinations with
/// rates gamma_i +- gamma_12.
Eigen::Vector2cd evolve_two_qubit_markovian(double lamb_shift, double rate,
                                            std::complex<double> g12, double cross_rate,
                                            const Eigen::Vector2cd& initial, double t);

}  // namespace polaron
