#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polaron/model.hpp"
#include "polaron/static_polaron.hpp"

namespace polaron::oracle {

/// Truncated Fock space: lexicographic enumeration over (spin configuration,
/// per-mode occupations), spin index major.
struct FockBasis {
    int mode_count = 0;
    int n_max = 0;
    int spin_count = 0;
    std::size_t dimension = 0;

    static FockBasis make(int mode_count, int n_max, int spin_count);

    std::size_t index(std::size_t spin, const std::vector<int>& occupations) const;
    void decode(std::size_t idx, std::size_t& spin, std::vector<int>& occupations) const;
};

/// Full emitter-line Hamiltonian with truncated ladder operators; Hermitian by
/// construction. Bath must carry mode_count modes and spin_count qubits.
Eigen::MatrixXcd build_hamiltonian(const DiscreteBath& bath, const Eigen::VectorXd& gaps,
                                   const FockBasis& basis);

struct GroundstateResult {
    double energy = 0.0;
    Eigen::VectorXcd vector;
    int multiplicity = 1;
};

/// Lowest eigenpair: dense below 10^4, Lanczos (deterministic start) above.
GroundstateResult exact_groundstate(const Eigen::MatrixXcd& h);

/// Eigendecomposition propagation of a normalised state.
Eigen::VectorXcd exact_evolve(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi0, double t);

struct MappedState {
    Eigen::VectorXcd vector;
    double leakage = 0.0;  // norm lost to the occupation cap
    bool leakage_warning = false;
};

/// Applies the inverse dressing transformation (spin-conditioned displacement
/// per qubit and mode, displacement matrices built by stable recurrence) to a
/// dressed-frame state, giving the corresponding lab-frame Fock vector.
MappedState polaron_frame_map(const Eigen::VectorXcd& state, const PolaronSolution& solution,
                              const FockBasis& basis);

/// <m|D(beta)|n> on the truncated ladder, column recurrence from the coherent
/// column: col_n = (a^dag - beta*) col_{n-1} / sqrt(n).
Eigen::MatrixXcd displacement_matrix(int n_max, complexd beta);

}  // namespace polaron::oracle
