#include "polaron/static_polaron.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "polaron/quadrature.hpp"

namespace polaron {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

void check_dimensions(const Eigen::MatrixXcd& f, const DiscreteBath& bath) {
    if (f.rows() != bath.couplings.rows() || f.cols() != bath.couplings.cols())
        throw ConfigError("displacement matrix does not match the bath");
}

double sigma_z_sign(std::size_t state, int qubit) {
    return ((state >> qubit) & 1u) ? -1.0 : 1.0;  // bit 0 = up
}

}  // namespace

IsingParameters ising_parameters(const Eigen::MatrixXcd& f, const DiscreteBath& bath) {
    check_dimensions(f, bath);
    const Eigen::Index n_qubits = f.rows();
    IsingParameters out;
    out.xi = 2.0 * f.cwiseAbs2().rowwise().sum();
    out.j.setZero(n_qubits, n_qubits);
    for (Eigen::Index i = 0; i < n_qubits; ++i) {
        for (Eigen::Index j = i; j < n_qubits; ++j) {
            double value = 0.0;
            for (Eigen::Index k = 0; k < f.cols(); ++k) {
                value += bath.frequencies[k] * std::real(f(i, k) * std::conj(f(j, k))) -
                         std::real(bath.couplings(i, k) * std::conj(f(j, k))) -
                         std::real(bath.couplings(j, k) * std::conj(f(i, k)));
            }
            out.j(i, j) = value;
            out.j(j, i) = value;
        }
    }
    return out;
}

Eigen::MatrixXd effective_spin_hamiltonian(const Eigen::MatrixXcd& f, const DiscreteBath& bath,
                                           const Eigen::VectorXd& gaps) {
    if (gaps.size() != f.rows()) throw ConfigError("one gap per qubit required");
    const int n_qubits = static_cast<int>(gaps.size());
    if (n_qubits > 12) throw ConfigError("dense spin model limited to 12 qubits");

    const IsingParameters ising = ising_parameters(f, bath);
    const std::size_t dim = std::size_t{1} << n_qubits;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int i = 0; i < n_qubits; ++i) {
            diag += 0.5 * gaps[i] * std::exp(-ising.xi[i]) * sigma_z_sign(s, i);
            diag += ising.j(i, i);  // sigma_i^x sigma_i^x = identity
        }
        h(s, s) += diag;
        for (int i = 0; i < n_qubits; ++i)
            for (int j = 0; j < n_qubits; ++j) {
                if (i == j) continue;
                const std::size_t flipped = s ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
                h(flipped, s) += ising.j(i, j);
            }
    }
    return h;
}

PolaronSolution solve_single_qubit_fixed_point(const DiscreteBath& bath, double gap,
                                               const FixedPointOptions& options) {
    if (bath.qubit_count() != 1) throw ConfigError("fixed-point solver handles a single qubit");
    if (!(gap >= 0.0) || !std::isfinite(gap)) throw ConfigError("gap must be finite and >= 0");

    const Eigen::Index modes = bath.mode_count();
    const auto displacements_at = [&](double delta_r) {
        Eigen::MatrixXcd f(1, modes);
        for (Eigen::Index k = 0; k < modes; ++k) {
            const double denom = bath.frequencies[k] + delta_r;
            f(0, k) = (denom > 0.0) ? bath.couplings(0, k) / denom : complexd(0.0, 0.0);
        }
        return f;
    };
    const auto renormalized = [&](const Eigen::MatrixXcd& f) {
        return gap * std::exp(-2.0 * f.cwiseAbs2().sum());
    };

    double delta_r = gap;
    int iter = 0;
    double change = 0.0;
    bool converged = false;
    for (; iter < options.max_iter; ++iter) {
        const double next = renormalized(displacements_at(delta_r));
        change = std::abs(next - delta_r);
        delta_r = options.damping * delta_r + (1.0 - options.damping) * next;
        if (change <= options.tol * gap) {
            converged = true;
            break;
        }
    }

    const Eigen::MatrixXcd f = displacements_at(delta_r);
    double residual = 0.0;
    for (Eigen::Index k = 0; k < modes; ++k)
        residual = std::max(residual,
                            std::abs(f(0, k) * (bath.frequencies[k] + delta_r) - bath.couplings(0, k)));
    if (!converged)
        throw ConvergenceError("single-qubit fixed point did not converge", delta_r, change, iter);

    const IsingParameters ising = ising_parameters(f, bath);

    PolaronSolution solution;
    solution.displacements = f;
    solution.gaps = Eigen::VectorXd::Constant(1, gap);
    solution.renorm_exponents = ising.xi;
    solution.renormalized_gaps = Eigen::VectorXd::Constant(1, gap * std::exp(-ising.xi[0]));
    solution.ising_couplings = ising.j;
    solution.groundstate_energy = ising.j(0, 0) - 0.5 * solution.renormalized_gaps[0];
    solution.degenerate = !(solution.renormalized_gaps[0] > 1e-12 * std::max(gap, 1e-300));
    // Groundstate spin is |down> whenever the renormalised gap stays positive;
    // the degenerate branch keeps the same deterministic choice.
    solution.spin_state = Eigen::VectorXcd::Zero(2);
    solution.spin_state[1] = 1.0;
    solution.residual = residual;
    solution.iterations = iter + 1;
    return solution;
}

namespace {

struct SpinObservables {
    double energy = 0.0;
    Eigen::VectorXd z;   // <sigma_i^z>
    Eigen::MatrixXd xx;  // <sigma_i^x sigma_j^x>
    Eigen::VectorXd state;
    bool degenerate = false;
};

SpinObservables spin_groundstate(const Eigen::MatrixXd& h, int n_qubits) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    SpinObservables obs;
    obs.energy = solver.eigenvalues()[0];
    obs.state = solver.eigenvectors().col(0);
    const double scale = std::max(1.0, std::abs(solver.eigenvalues().cwiseAbs().maxCoeff()));
    obs.degenerate = h.rows() > 1 && solver.eigenvalues()[1] - solver.eigenvalues()[0] < 1e-12 * scale;

    const std::size_t dim = static_cast<std::size_t>(h.rows());
    obs.z.setZero(n_qubits);
    obs.xx.setIdentity(n_qubits, n_qubits);
    for (int i = 0; i < n_qubits; ++i)
        for (std::size_t s = 0; s < dim; ++s)
            obs.z[i] += sigma_z_sign(s, i) * obs.state[s] * obs.state[s];
    for (int i = 0; i < n_qubits; ++i)
        for (int j = i + 1; j < n_qubits; ++j) {
            double value = 0.0;
            for (std::size_t s = 0; s < dim; ++s) {
                const std::size_t flipped = s ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
                value += obs.state[flipped] * obs.state[s];
            }
            obs.xx(i, j) = value;
            obs.xx(j, i) = value;
        }
    return obs;
}

double gradient_norm(const Eigen::MatrixXcd& f, const DiscreteBath& bath,
                     const Eigen::VectorXd& gaps, const SpinObservables& obs,
                     const Eigen::VectorXd& xi) {
    // d eps / d f*_mk = -Delta_m e^{-Xi_m} <sigma_m^z> f_mk + sum_i <xx>_im (w_k f_ik - g_ik)
    const Eigen::Index n_qubits = f.rows();
    double norm = 0.0;
    for (Eigen::Index m = 0; m < n_qubits; ++m)
        for (Eigen::Index k = 0; k < f.cols(); ++k) {
            complexd grad = -gaps[m] * std::exp(-xi[m]) * obs.z[m] * f(m, k);
            for (Eigen::Index i = 0; i < n_qubits; ++i)
                grad += obs.xx(i, m) * (bath.frequencies[k] * f(i, k) - bath.couplings(i, k));
            norm = std::max(norm, std::abs(grad));
        }
    return norm;
}

}  // namespace

PolaronSolution solve_variational(const DiscreteBath& bath, const Eigen::VectorXd& gaps,
                                  const Eigen::MatrixXcd* initial_f,
                                  const VariationalOptions& options) {
    if (gaps.size() != bath.couplings.rows()) throw ConfigError("one gap per bath qubit required");
    const int n_qubits = static_cast<int>(gaps.size());
    if (n_qubits > 12) throw ConfigError("variational solver limited to 12 qubits");
    const Eigen::Index modes = bath.mode_count();

    Eigen::MatrixXcd f_default(n_qubits, modes);
    for (int i = 0; i < n_qubits; ++i)
        for (Eigen::Index k = 0; k < modes; ++k) {
            const double denom = bath.frequencies[k] + gaps[i];
            f_default(i, k) = (denom > 0.0) ? bath.couplings(i, k) / denom : complexd(0.0, 0.0);
        }

    const double coupling_scale = std::max(bath.couplings.cwiseAbs().maxCoeff(), 1e-300);
    const double tol = options.grad_tol * coupling_scale;
    std::mt19937_64 rng(options.seed);

    Eigen::MatrixXcd best_f;
    SpinObservables best_obs;
    Eigen::VectorXd best_xi;
    Eigen::MatrixXd best_j;
    double best_energy = std::numeric_limits<double>::infinity();
    double best_grad = std::numeric_limits<double>::infinity();
    int total_iters = 0;
    bool certified = false;

    for (int attempt = 0; attempt <= options.restarts && !certified; ++attempt) {
        Eigen::MatrixXcd f = (initial_f != nullptr && attempt == 0) ? *initial_f : f_default;
        if (attempt > 0) {
            std::uniform_real_distribution<double> jitter(-0.2, 0.2);
            for (int i = 0; i < n_qubits; ++i)
                for (Eigen::Index k = 0; k < modes; ++k)
                    f(i, k) *= 1.0 + jitter(rng);
        }
        if (f.rows() != n_qubits || f.cols() != modes)
            throw ConfigError("initial displacement matrix has wrong dimensions");

        for (int iter = 0; iter < options.max_iter; ++iter) {
            ++total_iters;
            const IsingParameters ising = ising_parameters(f, bath);
            const Eigen::MatrixXd h = effective_spin_hamiltonian(f, bath, gaps);
            const SpinObservables obs = spin_groundstate(h, n_qubits);

            const double grad = gradient_norm(f, bath, gaps, obs, ising.xi);
            if (obs.energy < best_energy || grad < best_grad) {
                best_f = f;
                best_obs = obs;
                best_xi = ising.xi;
                best_j = ising.j;
                best_energy = obs.energy;
                best_grad = std::min(best_grad, grad);
            }
            if (grad < tol) {
                certified = true;
                best_f = f;
                best_obs = obs;
                best_xi = ising.xi;
                best_j = ising.j;
                best_energy = obs.energy;
                best_grad = grad;
                break;
            }

            // Stationarity is linear in f at fixed spin state: solve it mode by
            // mode and damp.
            Eigen::MatrixXd base = obs.xx;
            Eigen::VectorXd d(n_qubits);
            for (int m = 0; m < n_qubits; ++m)
                d[m] = -gaps[m] * std::exp(-ising.xi[m]) * obs.z[m];
            Eigen::MatrixXcd f_new(n_qubits, modes);
            for (Eigen::Index k = 0; k < modes; ++k) {
                if (!(bath.frequencies[k] > 0.0) && bath.couplings.col(k).cwiseAbs().maxCoeff() == 0.0) {
                    f_new.col(k).setZero();
                    continue;
                }
                Eigen::MatrixXcd a = (bath.frequencies[k] * base + Eigen::MatrixXd(d.asDiagonal()))
                                         .cast<complexd>();
                Eigen::VectorXcd rhs = base.cast<complexd>() * bath.couplings.col(k);
                f_new.col(k) = a.partialPivLu().solve(rhs);
            }
            f = options.damping * f + (1.0 - options.damping) * f_new;
        }
    }

    PolaronSolution solution;
    solution.displacements = best_f;
    solution.gaps = gaps;
    solution.renorm_exponents = best_xi;
    solution.renormalized_gaps =
        (gaps.array() * (-best_xi.array()).exp()).matrix();
    solution.ising_couplings = best_j;
    solution.groundstate_energy = best_energy;
    solution.spin_state = best_obs.state.cast<complexd>();
    solution.residual = best_grad;
    solution.iterations = total_iters;
    solution.degenerate = best_obs.degenerate;
    solution.certified = certified;
    return solution;
}

double delta_r_scaling_limit(double alpha, double gap, double omega_c) {
    if (!(alpha >= 0.0)) throw ConfigError("alpha must be non-negative");
    if (!(gap > 0.0) || !(omega_c > 0.0)) throw ConfigError("gap and cutoff must be positive");
    if (alpha >= 1.0) return 0.0;
    const double p = std::exp(1.0 + kEulerGamma);
    return gap * std::pow(p * gap / omega_c, alpha / (1.0 - alpha));
}

double delta_r_continuum_implicit(double alpha, double gap, double omega_c, double tol) {
    if (!(alpha >= 0.0)) throw ConfigError("alpha must be non-negative");
    if (!(gap > 0.0) || !(omega_c > 0.0)) throw ConfigError("gap and cutoff must be positive");
    if (alpha == 0.0) return gap;

    const auto exponent = [&](double delta_r) {
        return alpha * integrate(
                           [&](double w) {
                               const double denom = w + delta_r;
                               return w * std::exp(-w / omega_c) / (denom * denom);
                           },
                           0.0, 50.0 * omega_c, 1e-10);
    };

    double delta_r = gap;
    const int max_iter = 10000;
    for (int iter = 0; iter < max_iter; ++iter) {
        const double next = gap * std::exp(-exponent(delta_r));
        const double change = std::abs(next - delta_r);
        delta_r = 0.5 * (delta_r + next);
        if (change <= tol * gap) return delta_r;
        if (delta_r < 1e-13 * gap) return 0.0;  // localised
    }
    throw ConvergenceError("continuum implicit equation did not converge", delta_r, tol, max_iter);
}

Eigen::VectorXd groundstate_polarization(const PolaronSolution& solution) {
    const int n_qubits = static_cast<int>(solution.gaps.size());
    Eigen::VectorXd pol(n_qubits);
    const auto& c = solution.spin_state;
    for (int i = 0; i < n_qubits; ++i) {
        double expectation = 0.0;
        for (Eigen::Index s = 0; s < c.size(); ++s)
            expectation += sigma_z_sign(static_cast<std::size_t>(s), i) * std::norm(c[s]);
        pol[i] = expectation * std::exp(-solution.renorm_exponents[i]);
    }
    return pol;
}

}  // namespace polaron
