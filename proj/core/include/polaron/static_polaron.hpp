#pragma once

#include <Eigen/Dense>

#include "polaron/model.hpp"

namespace polaron {

/// Optimal displaced-mode groundstate of the emitters + line.
struct PolaronSolution {
    Eigen::MatrixXcd displacements;      // f*_{ik}, one row per qubit
    Eigen::VectorXcd spin_state;         // groundstate of the effective spin model
    double groundstate_energy = 0.0;
    Eigen::VectorXd gaps;                // bare Delta_i
    Eigen::VectorXd renorm_exponents;    // Xi_i = 2 sum_k |f_ik|^2
    Eigen::VectorXd renormalized_gaps;   // Delta_i exp(-Xi_i)
    Eigen::MatrixXd ising_couplings;     // symmetrised J_ij
    double residual = 0.0;               // stationarity measure at the reported optimum
    int iterations = 0;
    bool degenerate = false;             // renormalised gap collapsed to zero
    bool certified = true;               // stationarity certified below tolerance
};

struct IsingParameters {
    Eigen::VectorXd xi;  // Xi_i
    Eigen::MatrixXd j;   // J_ij, real symmetric
};

/// Xi_i = 2 sum_k |f_ik|^2 and the photon-mediated couplings
/// J_ij = sum_k [w_k Re(f_ik f*_jk) - Re(g_ik f*_jk) - Re(g_jk f*_ik)],
/// which is the symmetrised interaction entering the spin model.
IsingParameters ising_parameters(const Eigen::MatrixXcd& f, const DiscreteBath& bath);

/// H_s = sum_i (Delta_i/2) e^{-Xi_i} sigma_i^z + sum_ij J_ij sigma_i^x sigma_j^x
/// in the computational basis (bit 0 = up, bit i of the index addresses qubit i).
/// Real symmetric; dense, so N_s <= 12.
Eigen::MatrixXd effective_spin_hamiltonian(const Eigen::MatrixXcd& f, const DiscreteBath& bath,
                                           const Eigen::VectorXd& gaps);

struct FixedPointOptions {
    double tol = 1e-10;     // relative change of Delta_r between iterates
    int max_iter = 10000;
    double damping = 0.5;   // applied to Delta_r, not to the individual f_k
};

/// Single-emitter solver: f_k = g_k / (w_k + Delta_r[f]) iterated to
/// self-consistency in the single scalar Delta_r. Throws ConvergenceError
/// (carrying the last iterate) if the budget runs out.
PolaronSolution solve_single_qubit_fixed_point(const DiscreteBath& bath, double gap,
                                               const FixedPointOptions& options = {});

struct VariationalOptions {
    double grad_tol = 1e-9;  // infinity norm of the energy gradient, relative to max|g|
    int max_iter = 20000;
    double damping = 0.5;
    int restarts = 2;        // perturbed re-seeds on stagnation
    unsigned long long seed = 0;
};

/// General minimiser of the variational energy over the displacements, with
/// the spin state eliminated exactly through the 2^{N_s} spin model. A
/// stagnated run is returned with certified = false rather than thrown.
PolaronSolution solve_variational(const DiscreteBath& bath, const Eigen::VectorXd& gaps,
                                  const Eigen::MatrixXcd* initial_f = nullptr,
                                  const VariationalOptions& options = {});

/// Closed form Delta_r = Delta (p Delta / w_c)^{alpha/(1-alpha)}, p = e^{1+gamma_E},
/// valid for w_c >> Delta. Returns 0 for alpha >= 1 (localised phase).
double delta_r_scaling_limit(double alpha, double gap, double omega_c);

/// Solves Delta_r = Delta exp{-Int_0^inf dw J(w) / [pi (w + Delta_r)^2]} with the
/// exponentially cut-off Ohmic density, by damped fixed point + adaptive quadrature.
double delta_r_continuum_implicit(double alpha, double gap, double omega_c, double tol = 1e-10);

/// Per-qubit <sigma_i^z> in the lab frame: spin-model expectation times e^{-Xi_i}.
Eigen::VectorXd groundstate_polarization(const PolaronSolution& solution);

}  // namespace polaron
