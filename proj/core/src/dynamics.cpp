#include "polaron/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "polaron/quadrature.hpp"

namespace polaron {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

int parity(std::size_t state) {
    return (std::popcount(state) % 2 == 0) ? 1 : -1;
}

/// Spin eigensystem split into the groundstate and the excitations of
/// opposite parity (the only ones a single photon can reach). Eigenvector
/// phases are fixed so the largest component is positive.
struct SpinSector {
    Eigen::VectorXd gs;
    double gs_energy = 0.0;
    std::vector<Eigen::VectorXd> excited;
    std::vector<double> excited_energies;
    Eigen::VectorXd z;  // <sigma_i^z>_gs
};

Eigen::VectorXd fix_phase(Eigen::VectorXd v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    return v;
}

SpinSector spin_sector(const Eigen::MatrixXcd& f, const DiscreteBath& bath,
                       const Eigen::VectorXd& gaps) {
    const Eigen::MatrixXd h = effective_spin_hamiltonian(f, bath, gaps);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const int n_qubits = static_cast<int>(gaps.size());
    const std::size_t dim = static_cast<std::size_t>(h.rows());

    SpinSector sector;
    sector.gs = fix_phase(solver.eigenvectors().col(0));
    sector.gs_energy = solver.eigenvalues()[0];

    int gs_parity = 0;
    double weight = -1.0;
    for (std::size_t s = 0; s < dim; ++s)
        if (std::abs(sector.gs[s]) > weight) {
            weight = std::abs(sector.gs[s]);
            gs_parity = parity(s);
        }

    for (Eigen::Index e = 1; e < h.rows(); ++e) {
        const Eigen::VectorXd v = solver.eigenvectors().col(e);
        double opposite = 0.0;
        for (std::size_t s = 0; s < dim; ++s)
            if (parity(s) != gs_parity) opposite += v[s] * v[s];
        if (opposite > 0.5) {
            sector.excited.push_back(fix_phase(v));
            sector.excited_energies.push_back(solver.eigenvalues()[e]);
        }
    }

    sector.z.setZero(n_qubits);
    for (int i = 0; i < n_qubits; ++i)
        for (std::size_t s = 0; s < dim; ++s) {
            const double sign = ((s >> i) & 1u) ? -1.0 : 1.0;
            sector.z[i] += sign * sector.gs[s] * sector.gs[s];
        }
    return sector;
}

complexd sigma_x_element(const Eigen::VectorXd& bra, const Eigen::VectorXd& ket, int qubit) {
    complexd value = 0.0;
    for (std::size_t s = 0; s < static_cast<std::size_t>(ket.size()); ++s)
        value += bra[s ^ (std::size_t{1} << qubit)] * ket[s];
    return value;
}

complexd sigma_y_element(const Eigen::VectorXd& bra, const Eigen::VectorXd& ket, int qubit) {
    // sigma^y |up> = i |down>, sigma^y |down> = -i |up>
    complexd value = 0.0;
    for (std::size_t s = 0; s < static_cast<std::size_t>(ket.size()); ++s) {
        const double sign = ((s >> qubit) & 1u) ? -1.0 : 1.0;
        value += bra[s ^ (std::size_t{1} << qubit)] * complexd(0.0, sign) * ket[s];
    }
    return value;
}

struct Blocks {
    Eigen::VectorXd spin_gaps;
    Eigen::MatrixXcd g;  // (spin, mode)
    Eigen::MatrixXcd f;  // (mode, mode)
};

Blocks coupling_blocks(const PolaronSolution& solution, const DiscreteBath& bath) {
    const Eigen::MatrixXcd& f = solution.displacements;
    if (f.rows() != bath.couplings.rows() || f.cols() != bath.couplings.cols())
        throw ConfigError("solution does not match the bath");
    const Eigen::VectorXd& gaps = solution.gaps;
    const int n_qubits = static_cast<int>(gaps.size());
    const Eigen::Index modes = bath.mode_count();

    const SpinSector sector = spin_sector(f, bath, gaps);
    const Eigen::Index n_exc = static_cast<Eigen::Index>(sector.excited.size());

    Blocks blocks;
    blocks.spin_gaps.resize(n_exc);
    for (Eigen::Index s = 0; s < n_exc; ++s)
        blocks.spin_gaps[s] = sector.excited_energies[s] - sector.gs_energy;

    Eigen::VectorXd dressed(n_qubits);
    for (int i = 0; i < n_qubits; ++i)
        dressed[i] = gaps[i] * std::exp(-solution.renorm_exponents[i]);

    // Dressing convention: the displacement amplitude f_ik rides on the
    // creator, so the one-photon couplings carry the conjugates of f and g.
    blocks.g.setZero(n_exc, modes);
    for (Eigen::Index s = 0; s < n_exc; ++s)
        for (int i = 0; i < n_qubits; ++i) {
            const complexd sy = sigma_y_element(sector.excited[s], sector.gs, i);
            const complexd sx = sigma_x_element(sector.excited[s], sector.gs, i);
            for (Eigen::Index k = 0; k < modes; ++k)
                blocks.g(s, k) +=
                    complexd(0.0, 1.0) * dressed[i] * std::conj(f(i, k)) * sy +
                    std::conj(bath.couplings(i, k) - bath.frequencies[k] * f(i, k)) * sx;
        }

    blocks.f.setZero(modes, modes);
    for (int i = 0; i < n_qubits; ++i) {
        const double weight = -2.0 * dressed[i] * sector.z[i];
        blocks.f += weight * (f.row(i).transpose() * f.row(i).conjugate());
    }
    return blocks;
}

}  // namespace

EffectiveHamiltonian::EffectiveHamiltonian(Eigen::MatrixXcd matrix, Eigen::Index spin_dim,
                                           double gs_energy_offset)
    : matrix_(std::move(matrix)), spin_dim_(spin_dim), gs_energy_offset_(gs_energy_offset) {
    const double scale = std::max(matrix_.cwiseAbs().maxCoeff(), 1e-300);
    const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) throw ConfigError("effective Hamiltonian assembly is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_);
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXcd EffectiveHamiltonian::propagate(const Eigen::VectorXcd& amplitudes,
                                                 double dt) const {
    if (amplitudes.size() != matrix_.rows())
        throw ConfigError("amplitude vector does not match the generator");
    Eigen::VectorXcd modes = eigenvectors_.adjoint() * amplitudes;
    for (Eigen::Index j = 0; j < modes.size(); ++j)
        modes[j] *= std::exp(complexd(0.0, -eigenvalues_[j] * dt));
    return eigenvectors_ * modes;
}

EffectiveHamiltonian assemble_hp(const PolaronSolution& solution, const DiscreteBath& bath) {
    const Blocks blocks = coupling_blocks(solution, bath);
    const Eigen::Index n_exc = blocks.spin_gaps.size();
    const Eigen::Index modes = bath.mode_count();
    const Eigen::Index dim = n_exc + modes;

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < n_exc; ++s) h(s, s) = blocks.spin_gaps[s];
    h.topRightCorner(n_exc, modes) = blocks.g;
    h.bottomLeftCorner(modes, n_exc) = blocks.g.adjoint();
    h.bottomRightCorner(modes, modes) = blocks.f;
    for (Eigen::Index k = 0; k < modes; ++k) h(n_exc + k, n_exc + k) += bath.frequencies[k];

    return EffectiveHamiltonian(std::move(h), n_exc, solution.groundstate_energy);
}

WWCouplings ww_couplings(const PolaronSolution& solution, const DiscreteBath& bath) {
    const Blocks blocks = coupling_blocks(solution, bath);
    return WWCouplings{blocks.spin_gaps, blocks.g, blocks.f};
}

ModeMixing diagonalize_mode_mixing(const Eigen::MatrixXd& f) {
    const double scale = std::max(f.cwiseAbs().maxCoeff(), 1e-300);
    if ((f - f.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ConfigError("mode-mixing matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(f);
    ModeMixing mixing{solver.eigenvectors(), solver.eigenvalues()};
    const Eigen::MatrixXd gram = mixing.transform.transpose() * mixing.transform;
    if ((gram - Eigen::MatrixXd::Identity(f.rows(), f.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw ConfigError("mode-mixing transform lost orthogonality");
    return mixing;
}

ExcitationVector evolve(const ExcitationVector& state, const EffectiveHamiltonian& h, double dt) {
    if (state.spin_amps.size() != h.spin_dimension() ||
        state.photon_amps.size() != h.mode_dimension())
        throw ConfigError("state does not match the generator");
    Eigen::VectorXcd amplitudes(h.dimension());
    amplitudes << state.spin_amps, state.photon_amps;
    amplitudes = h.propagate(amplitudes, dt);

    ExcitationVector out;
    out.time = state.time + dt;
    out.gs_amp = state.gs_amp;  // decoupled, constant
    out.spin_amps = amplitudes.head(h.spin_dimension());
    out.photon_amps = amplitudes.tail(h.mode_dimension());
    return out;
}

Eigen::VectorXd omega_signed_labels(const DiscreteBath& bath) {
    Eigen::VectorXd labels(bath.mode_count());
    for (Eigen::Index k = 0; k < bath.mode_count(); ++k) {
        const double sign = (bath.mode_numbers[k] < 0) ? -1.0 : 1.0;
        labels[k] = sign * bath.frequencies[k];
    }
    return labels;
}

EmissionSeries spontaneous_emission_run(const ModelConfig& config, double t_max, double dt) {
    config.validate();
    if (config.qubit_count() != 1) throw ConfigError("emission run expects a single emitter");
    if (!(t_max > 0.0) || !(dt > 0.0)) throw ConfigError("t_max and dt must be positive");

    const DiscreteBath bath = build_discrete_bath(config);
    const PolaronSolution solution = solve_single_qubit_fixed_point(bath, config.qubit_gaps[0]);
    const EffectiveHamiltonian h = assemble_hp(solution, bath);

    EmissionSeries series;
    series.delta_r = solution.renormalized_gaps[0];
    series.revival_time = bath.length / bath.speed;
    series.revival_warning = t_max > 0.8 * series.revival_time;
    series.omega_signed = omega_signed_labels(bath);

    const int steps = static_cast<int>(std::floor(t_max / dt)) + 1;
    series.times.resize(steps);
    series.survival.resize(steps);
    series.photon_density.resize(steps, bath.mode_count());

    Eigen::VectorXcd initial = Eigen::VectorXcd::Zero(h.dimension());
    initial[0] = 1.0;
    for (int step = 0; step < steps; ++step) {
        const double t = step * dt;
        const Eigen::VectorXcd amplitudes = h.propagate(initial, t);
        series.times[step] = t;
        series.survival[step] = std::norm(amplitudes[0]);
        for (Eigen::Index k = 0; k < bath.mode_count(); ++k)
            series.photon_density(step, k) = std::norm(amplitudes[h.spin_dimension() + k]);
    }
    return series;
}

DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& survival,
                        double gap) {
    if (times.size() != survival.size() || times.empty())
        throw ConfigError("mismatched or empty series");

    const double t_start = 5.0 / gap;
    const double floor = 1e-3;
    std::vector<double> ts;
    std::vector<double> logs;
    bool non_monotone = false;
    double previous = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_start) continue;
        if (survival[i] < floor) break;
        if (!(survival[i] > 0.0)) throw ConfigError("survival must stay positive over the fit window");
        if (!ts.empty() && survival[i] > previous * 1.05) non_monotone = true;
        previous = survival[i];
        ts.push_back(times[i]);
        logs.push_back(std::log(survival[i]));
    }

    DecayFit fit;
    if (ts.size() < 5) {
        fit.quality_flag = true;
        if (ts.size() < 2) return fit;
    }

    const double n = static_cast<double>(ts.size());
    double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sl += logs[i];
        stt += ts[i] * ts[i];
        stl += ts[i] * logs[i];
    }
    const double denom = n * stt - st * st;
    const double slope = (denom != 0.0) ? (n * stl - st * sl) / denom : 0.0;
    const double intercept = (sl - slope * st) / n;

    double rss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = logs[i] - (intercept + slope * ts[i]);
        rss += r * r;
    }
    fit.rate = -slope;
    fit.log_residual = std::sqrt(rss / n);
    fit.quality_flag = fit.quality_flag || non_monotone || fit.log_residual > 0.5;
    return fit;
}

MarkovianRate markovian_rate_lamb(double alpha, double gap, double omega_c) {
    if (!(alpha >= 0.0)) throw ConfigError("alpha must be non-negative");
    if (alpha >= 1.0) return {0.0, 0.0};  // localised: no decay, no shift
    const double delta_r = delta_r_scaling_limit(alpha, gap, omega_c);
    return {M_PI * alpha * delta_r, -alpha * delta_r};
}

complexd memory_kernel(double t, double alpha, double delta_r, double omega_c) {
    if (!(t >= 0.0)) throw ConfigError("kernel defined for t >= 0");
    if (alpha == 0.0) return 0.0;
    return integrate(
        [&](double w) -> complexd {
            const double j = M_PI * alpha * w * std::exp(-w / omega_c);
            const double vertex = 2.0 * delta_r / (w + delta_r);
            return j / (2.0 * M_PI) * vertex * std::exp(complexd(0.0, -(w - delta_r) * t));
        },
        0.0, 50.0 * omega_c, 1e-9);
}

ResolventValue resolvent(double eps, double alpha, double delta_r) {
    if (eps == -delta_r) throw ConfigError("level shift has a pole at eps = -Delta_r");
    ResolventValue value;
    value.level_shift = -2.0 * alpha * delta_r * delta_r / (delta_r + eps);
    const double j = (eps > 0.0) ? M_PI * alpha * eps : 0.0;
    const double vertex = 2.0 * delta_r / (eps + delta_r);
    value.level_broadening = j * vertex * vertex;
    value.propagator =
        1.0 / complexd(eps - delta_r - value.level_shift, 0.5 * value.level_broadening);
    return value;
}

double emission_pole(double alpha, double delta_r) {
    if (!(alpha >= 0.0)) throw ConfigError("alpha must be non-negative");
    if (alpha >= 0.5) return 0.0;  // quasi-level closed
    const auto condition = [&](double eps) {
        return eps - delta_r - resolvent(eps, alpha, delta_r).level_shift;
    };
    double lo = 0.0;
    double hi = 2.0 * delta_r;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (condition(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double coherent_incoherent_boundary() {
    // Smallest coupling with a vanishing emission pole.
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (emission_pole(mid, 1.0) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Eigen::VectorXd photon_density(const ExcitationVector& state) {
    return state.photon_amps.cwiseAbs2();
}

}  // namespace polaron
