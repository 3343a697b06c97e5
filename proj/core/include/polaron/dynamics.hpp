#pragma once

#include <vector>

#include <Eigen/Dense>

#include "polaron/model.hpp"
#include "polaron/static_polaron.hpp"

namespace polaron {

/// One-excitation amplitudes on top of the dressed groundstate. The
/// groundstate amplitude never couples to the rest and stays constant.
struct ExcitationVector {
    double time = 0.0;
    complexd gs_amp{0.0, 0.0};
    Eigen::VectorXcd spin_amps;    // one per spin excitation
    Eigen::VectorXcd photon_amps;  // one per mode

    double norm_sq() const {
        return std::norm(gs_amp) + spin_amps.squaredNorm() + photon_amps.squaredNorm();
    }
};

/// Hermitian generator of the one-excitation dynamics in the dressed frame,
/// with its eigendecomposition cached so propagation is exact for any t.
class EffectiveHamiltonian {
public:
    EffectiveHamiltonian(Eigen::MatrixXcd matrix, Eigen::Index spin_dim, double gs_energy_offset);

    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }
    Eigen::Index dimension() const { return matrix_.rows(); }
    Eigen::Index spin_dimension() const { return spin_dim_; }
    Eigen::Index mode_dimension() const { return matrix_.rows() - spin_dim_; }
    double gs_energy_offset() const { return gs_energy_offset_; }

    /// a(t + dt) = V e^{-i E dt} V^dag a(t); unitary to rounding.
    Eigen::VectorXcd propagate(const Eigen::VectorXcd& amplitudes, double dt) const;

private:
    Eigen::MatrixXcd matrix_;
    Eigen::Index spin_dim_;
    double gs_energy_offset_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

/// Matrix elements of the dressed-frame Hamiltonian (minus the groundstate
/// energy) between the spin excitations and the one-photon states. Evaluated
/// in closed form over the displaced vacuum:
///   spin block      diag(eps_s - eps_gs)
///   spin-photon     i Delta_i e^{-Xi_i} f_ik <s|sigma_i^y|gs> + (g_ik - w_k f_ik) <s|sigma_i^x|gs>
///   photon block    w_k delta_kk' - 2 sum_i Delta_i e^{-Xi_i} <sigma_i^z>_gs f*_ik f_ik'
/// Only excitations in the spin-parity sector opposite to the groundstate
/// couple, so the rest are dropped.
EffectiveHamiltonian assemble_hp(const PolaronSolution& solution, const DiscreteBath& bath);

struct WWCouplings {
    Eigen::VectorXd spin_gaps;  // Delta_s = eps_e^s - eps_gs
    Eigen::MatrixXcd g;         // g_{ks}, stored as (spin s, mode k)
    Eigen::MatrixXcd f;         // f_{kk'} photon-photon couplings
};

/// The same couplings in Weisskopf-Wigner form. f is Hermitian and, for a
/// single emitter with real couplings, real symmetric.
WWCouplings ww_couplings(const PolaronSolution& solution, const DiscreteBath& bath);

struct ModeMixing {
    Eigen::MatrixXd transform;  // orthogonal M
    Eigen::VectorXd shifts;     // Delta w_k
};

/// Orthogonal diagonalisation of a real-symmetric photon-photon coupling.
ModeMixing diagonalize_mode_mixing(const Eigen::MatrixXd& f);

ExcitationVector evolve(const ExcitationVector& state, const EffectiveHamiltonian& h, double dt);

struct EmissionSeries {
    std::vector<double> times;
    std::vector<double> survival;        // |alpha_1(t)|^2
    Eigen::MatrixXd photon_density;      // sample x mode
    Eigen::VectorXd omega_signed;        // mode labels, w_n * sign(k_n)
    double delta_r = 0.0;
    double revival_time = 0.0;           // L / v
    bool revival_warning = false;
};

/// Decay of an initially excited emitter: alpha_1(0) = 1, everything else 0.
EmissionSeries spontaneous_emission_run(const ModelConfig& config, double t_max, double dt);

struct DecayFit {
    double rate = 0.0;
    double log_residual = 0.0;  // rms of the log-linear fit
    bool quality_flag = false;  // oscillatory / ill-conditioned window
};

/// Least-squares exponential fit of the survival probability, skipping the
/// short-time transient (t < 5/gap) and the tail below 1e-3.
DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& survival,
                        double gap);

struct MarkovianRate {
    double gamma = 0.0;
    double lamb_shift = 0.0;
};

/// gamma_1 = pi alpha Delta (p Delta/w_c)^{alpha/(1-alpha)}, delta_1 = -alpha Delta_r.
MarkovianRate markovian_rate_lamb(double alpha, double gap, double omega_c);

/// K_1(t) = Int dw J(w)/(2 pi) * 2 Delta_r/(w + Delta_r) * e^{-i (w - Delta_r) t}.
complexd memory_kernel(double t, double alpha, double delta_r, double omega_c);

struct ResolventValue {
    complexd propagator;
    double level_shift = 0.0;      // delta(eps) = -2 alpha Delta_r^2 / (Delta_r + eps)
    double level_broadening = 0.0; // gamma(eps) = J(eps) (2 Delta_r / (eps + Delta_r))^2
};

/// Energy-resolved propagator G(eps) = 1 / (eps - Delta_r - delta(eps) + i gamma(eps)/2).
/// The quasi-level condition eps - Delta_r - delta(eps) = 0 recovers the
/// Markovian pair (gamma_1, delta_1) at the single-pole substitution and has
/// root eps_m = sqrt(1 - 2 alpha) Delta_r.
ResolventValue resolvent(double eps, double alpha, double delta_r);

/// Positive root of the quasi-level condition; 0 once it closes (alpha >= 1/2).
double emission_pole(double alpha, double delta_r);

/// Coupling where the emission pole reaches zero, located by root scan.
double coherent_incoherent_boundary();

/// |alpha_k|^2 per mode.
Eigen::VectorXd photon_density(const ExcitationVector& state);

/// Mode labels w_n * sign(k_n) for spectra that separate travel directions.
Eigen::VectorXd omega_signed_labels(const DiscreteBath& bath);

}  // namespace polaron
