#include "polaron/oracle.hpp"

#include <cmath>

namespace polaron::oracle {

FockBasis FockBasis::make(int mode_count, int n_max, int spin_count) {
    if (mode_count < 1 || mode_count > 5) throw ConfigError("oracle supports 1..5 modes");
    if (spin_count < 1 || spin_count > 2) throw ConfigError("oracle supports 1..2 spins");
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    double dim = std::pow(static_cast<double>(n_max + 1), mode_count) * (1 << spin_count);
    if (dim > 1e5) throw ConfigError("truncated Fock dimension above the 1e5 cap");
    FockBasis basis;
    basis.mode_count = mode_count;
    basis.n_max = n_max;
    basis.spin_count = spin_count;
    basis.dimension = static_cast<std::size_t>(std::llround(dim));
    return basis;
}

std::size_t FockBasis::index(std::size_t spin, const std::vector<int>& occupations) const {
    std::size_t idx = spin;
    for (int m = 0; m < mode_count; ++m) {
        idx = idx * (n_max + 1) + static_cast<std::size_t>(occupations[m]);
    }
    return idx;
}

void FockBasis::decode(std::size_t idx, std::size_t& spin, std::vector<int>& occupations) const {
    occupations.assign(mode_count, 0);
    for (int m = mode_count - 1; m >= 0; --m) {
        occupations[m] = static_cast<int>(idx % (n_max + 1));
        idx /= (n_max + 1);
    }
    spin = idx;
}

Eigen::MatrixXcd build_hamiltonian(const DiscreteBath& bath, const Eigen::VectorXd& gaps,
                                   const FockBasis& basis) {
    if (bath.mode_count() != basis.mode_count || bath.qubit_count() != basis.spin_count ||
        gaps.size() != basis.spin_count)
        throw ConfigError("bath does not match the Fock basis");
    if (basis.dimension > 8192)
        throw ConfigError("dense oracle Hamiltonian limited to dimension 8192");

    const std::size_t dim = basis.dimension;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<int> occ(basis.mode_count);
    std::size_t spin = 0;
    for (std::size_t idx = 0; idx < dim; ++idx) {
        basis.decode(idx, spin, occ);
        double diag = 0.0;
        for (int i = 0; i < basis.spin_count; ++i)
            diag += 0.5 * gaps[i] * (((spin >> i) & 1u) ? -1.0 : 1.0);
        for (int m = 0; m < basis.mode_count; ++m) diag += bath.frequencies[m] * occ[m];
        h(idx, idx) = diag;

        // sigma_i^x (g_ik a_k^dag + g*_ik a_k)
        for (int i = 0; i < basis.spin_count; ++i) {
            const std::size_t flipped = spin ^ (std::size_t{1} << i);
            for (int m = 0; m < basis.mode_count; ++m) {
                if (occ[m] < basis.n_max) {
                    occ[m] += 1;
                    const std::size_t up = basis.index(flipped, occ);
                    occ[m] -= 1;
                    h(up, idx) += bath.couplings(i, m) * std::sqrt(static_cast<double>(occ[m] + 1));
                }
                if (occ[m] > 0) {
                    occ[m] -= 1;
                    const std::size_t down = basis.index(flipped, occ);
                    occ[m] += 1;
                    h(down, idx) += std::conj(bath.couplings(i, m)) *
                                    std::sqrt(static_cast<double>(occ[m]));
                }
            }
        }
    }
    return h;
}

namespace {

/// Lanczos with full reorthogonalisation and a deterministic start vector.
GroundstateResult lanczos_lowest(const Eigen::MatrixXcd& h) {
    const Eigen::Index dim = h.rows();
    const int max_steps = std::min<Eigen::Index>(dim, 300);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = complexd(1.0 + 0.3 * std::sin(0.7 * i), 0.0);
    v.normalize();

    std::vector<Eigen::VectorXcd> basis;
    std::vector<double> alpha, beta;
    Eigen::VectorXcd w;
    for (int step = 0; step < max_steps; ++step) {
        basis.push_back(v);
        w = h * v;
        const double a = std::real(v.dot(w));
        alpha.push_back(a);
        w -= a * v;
        if (step > 0) w -= beta.back() * basis[step - 1];
        for (const auto& u : basis) w -= u.dot(w) * u;  // reorthogonalise
        const double b = w.norm();
        if (b < 1e-13) break;
        beta.push_back(b);
        v = w / b;
    }

    const int steps = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
    for (int i = 0; i < steps; ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < steps) {
            tri(i, i + 1) = beta[i];
            tri(i + 1, i) = beta[i];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
    GroundstateResult result;
    result.energy = solver.eigenvalues()[0];
    result.vector = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < steps; ++i) result.vector += solver.eigenvectors()(i, 0) * basis[i];
    result.vector.normalize();
    return result;
}

}  // namespace

GroundstateResult exact_groundstate(const Eigen::MatrixXcd& h) {
    const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ConfigError("oracle expects a Hermitian matrix");

    GroundstateResult result;
    if (h.rows() <= 2500) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        result.energy = solver.eigenvalues()[0];
        result.vector = solver.eigenvectors().col(0);
        const double gap_scale = std::max(1.0, std::abs(solver.eigenvalues()[0]));
        for (Eigen::Index e = 1; e < h.rows(); ++e) {
            if (solver.eigenvalues()[e] - solver.eigenvalues()[0] < 1e-10 * gap_scale)
                ++result.multiplicity;
            else
                break;
        }
    } else {
        result = lanczos_lowest(h);
    }
    return result;
}

Eigen::VectorXcd exact_evolve(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi0, double t) {
    if (psi0.size() != h.rows()) throw ConfigError("state does not match the Hamiltonian");
    if (h.rows() > 4096) throw ConfigError("exact evolution limited to dimension 4096");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    Eigen::VectorXcd modes = solver.eigenvectors().adjoint() * psi0;
    for (Eigen::Index j = 0; j < modes.size(); ++j)
        modes[j] *= std::exp(complexd(0.0, -solver.eigenvalues()[j] * t));
    return solver.eigenvectors() * modes;
}

Eigen::MatrixXcd displacement_matrix(int n_max, complexd beta) {
    const int dim = n_max + 1;
    Eigen::MatrixXcd d(dim, dim);
    d(0, 0) = std::exp(-0.5 * std::norm(beta));
    for (int m = 1; m < dim; ++m) d(m, 0) = d(m - 1, 0) * beta / std::sqrt(static_cast<double>(m));
    for (int n = 1; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            complexd value = -std::conj(beta) * d(m, n - 1);
            if (m > 0) value += std::sqrt(static_cast<double>(m)) * d(m - 1, n - 1);
            d(m, n) = value / std::sqrt(static_cast<double>(n));
        }
    }
    return d;
}

MappedState polaron_frame_map(const Eigen::VectorXcd& state, const PolaronSolution& solution,
                              const FockBasis& basis) {
    if (state.size() != static_cast<Eigen::Index>(basis.dimension))
        throw ConfigError("state does not match the Fock basis");
    if (solution.displacements.rows() != basis.spin_count ||
        solution.displacements.cols() != basis.mode_count)
        throw ConfigError("solution does not match the Fock basis");

    const double norm_in = state.norm();
    Eigen::VectorXcd psi = state;
    const std::size_t dim = basis.dimension;
    const int cells = basis.n_max + 1;

    std::vector<int> occ(basis.mode_count);
    std::size_t spin = 0;

    std::size_t stride_m = 1;  // index stride of mode m (modes stored last-major)
    std::vector<std::size_t> strides(basis.mode_count);
    for (int m = basis.mode_count - 1; m >= 0; --m) {
        strides[m] = stride_m;
        stride_m *= cells;
    }

    for (int qubit = 0; qubit < basis.spin_count; ++qubit) {
        const std::size_t spin_bit = std::size_t{1} << qubit;
        const std::size_t spin_stride = stride_m;  // occupations per spin block

        // Rotate qubit to its sigma^x eigenbasis: (up, down) -> ((up+down), (up-down))/sqrt(2).
        for (std::size_t idx = 0; idx < dim; ++idx) {
            basis.decode(idx, spin, occ);
            if (spin & spin_bit) continue;
            const std::size_t partner = idx + spin_bit * spin_stride;
            const complexd a = psi[idx];
            const complexd b = psi[partner];
            psi[idx] = (a + b) / std::sqrt(2.0);
            psi[partner] = (a - b) / std::sqrt(2.0);
        }

        // Spin-conditioned displacement D(-s f_qk) on every mode (the
        // displacement amplitude rides on the creator).
        for (int m = 0; m < basis.mode_count; ++m) {
            const complexd f = solution.displacements(qubit, m);
            for (int sign : {+1, -1}) {
                const Eigen::MatrixXcd d =
                    displacement_matrix(basis.n_max, -static_cast<double>(sign) * f);
                const std::size_t stride = strides[m];
                Eigen::VectorXcd block(cells);
                for (std::size_t idx = 0; idx < dim; ++idx) {
                    basis.decode(idx, spin, occ);
                    if (occ[m] != 0) continue;  // visit each fibre once
                    const bool plus_branch = !(spin & spin_bit);
                    if ((sign == +1) != plus_branch) continue;
                    for (int n = 0; n < cells; ++n) block[n] = psi[idx + n * stride];
                    block = d * block;
                    for (int n = 0; n < cells; ++n) psi[idx + n * stride] = block[n];
                }
            }
        }

        // Rotate back.
        for (std::size_t idx = 0; idx < dim; ++idx) {
            basis.decode(idx, spin, occ);
            if (spin & spin_bit) continue;
            const std::size_t partner = idx + spin_bit * spin_stride;
            const complexd a = psi[idx];
            const complexd b = psi[partner];
            psi[idx] = (a + b) / std::sqrt(2.0);
            psi[partner] = (a - b) / std::sqrt(2.0);
        }
    }

    MappedState mapped;
    mapped.vector = psi;
    const double norm_out = psi.norm();
    mapped.leakage = std::max(0.0, 1.0 - (norm_out * norm_out) / (norm_in * norm_in));
    mapped.leakage_warning = mapped.leakage > 0.01;
    return mapped;
}

}  // namespace polaron::oracle
