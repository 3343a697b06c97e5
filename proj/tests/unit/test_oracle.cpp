#include <doctest.h>

#include <cmath>
#include <random>

#include "polaron/oracle.hpp"
#include "polaron/static_polaron.hpp"
#include "test_baths.hpp"

using namespace polaron;
using oracle::FockBasis;
using polaron::testing::mini_bath;
using polaron::testing::random_bath;

TEST_CASE("fock basis enumeration is a bijection") {
    const FockBasis basis = FockBasis::make(3, 4, 2);
    CHECK(basis.dimension == 4 * 125);
    std::vector<int> occ;
    std::size_t spin = 0;
    for (std::size_t idx = 0; idx < basis.dimension; ++idx) {
        basis.decode(idx, spin, occ);
        CHECK(basis.index(spin, occ) == idx);
    }
    CHECK_THROWS_AS(FockBasis::make(6, 4, 1), ConfigError);
    CHECK_THROWS_AS(FockBasis::make(4, 40, 2), ConfigError);  // dimension cap
}

TEST_CASE("decoupled hamiltonian is diagonal") {
    const DiscreteBath bath = mini_bath(0.0);
    const FockBasis basis = FockBasis::make(3, 3, 1);
    const Eigen::MatrixXcd h =
        oracle::build_hamiltonian(bath, Eigen::VectorXd::Constant(1, 1.0), basis);
    CHECK((h - Eigen::MatrixXcd(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    const auto gs = oracle::exact_groundstate(h);
    CHECK(gs.energy == doctest::Approx(-0.5).epsilon(1e-14));
    // groundstate is a single basis state
    CHECK(gs.vector.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermiticity is exact by construction") {
    std::mt19937_64 rng(5);
    const DiscreteBath bath = random_bath(rng, 3, 2);
    const FockBasis basis = FockBasis::make(3, 4, 2);
    const Eigen::MatrixXcd h =
        oracle::build_hamiltonian(bath, Eigen::VectorXd::Constant(2, 1.0), basis);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single displaced oscillator at zero gap") {
    DiscreteBath bath;
    bath.mode_numbers = {1};
    bath.momenta = Eigen::VectorXd::Constant(1, 1.0);
    bath.frequencies = Eigen::VectorXd::Constant(1, 1.0);
    bath.couplings = Eigen::MatrixXcd::Constant(1, 1, 0.5);
    bath.length = 1.0;
    bath.speed = 1.0;
    bath.omega_c = 1.0;
    const FockBasis basis = FockBasis::make(1, 30, 1);
    const auto h = oracle::build_hamiltonian(bath, Eigen::VectorXd::Zero(1), basis);
    const auto gs = oracle::exact_groundstate(h);
    CHECK(std::abs(gs.energy - (-0.25)) < 1e-8);  // -|g|^2/omega
    CHECK(gs.multiplicity == 2);                  // both spin branches displace
}

TEST_CASE("groundstate residual") {
    std::mt19937_64 rng(17);
    const DiscreteBath bath = random_bath(rng, 2, 1);
    const FockBasis basis = FockBasis::make(2, 8, 1);
    const auto h = oracle::build_hamiltonian(bath, Eigen::VectorXd::Constant(1, 1.0), basis);
    const auto gs = oracle::exact_groundstate(h);
    const double residual = (h * gs.vector - gs.energy * gs.vector).norm();
    CHECK(residual < 1e-9 * h.cwiseAbs().maxCoeff() * h.rows());
}

TEST_CASE("truncation convergence and the iterative path") {
    // n_max 9 solves densely, n_max 11 goes through Lanczos; the groundstate
    // energy must have converged well before either cap.
    const DiscreteBath bath = mini_bath(0.15);
    const Eigen::VectorXd gap = Eigen::VectorXd::Constant(1, 1.0);
    const auto e_of = [&](int n_max) {
        const FockBasis basis = FockBasis::make(3, n_max, 1);
        return oracle::exact_groundstate(oracle::build_hamiltonian(bath, gap, basis)).energy;
    };
    const double e9 = e_of(9);
    const double e11 = e_of(11);
    CHECK(std::abs(e11 - e9) < 1e-6);
}

TEST_CASE("exact evolution") {
    const DiscreteBath bath = mini_bath(0.1);
    const FockBasis basis = FockBasis::make(3, 4, 1);
    const auto h = oracle::build_hamiltonian(bath, Eigen::VectorXd::Constant(1, 1.0), basis);

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(basis.dimension);
    psi0[basis.index(0, {0, 0, 0})] = 1.0;  // excited spin, empty line

    SUBCASE("zero time is the identity") {
        CHECK((oracle::exact_evolve(h, psi0, 0.0) - psi0).norm() < 1e-12);
    }

    SUBCASE("norm preserved over a long window") {
        const Eigen::VectorXcd psi = oracle::exact_evolve(h, psi0, 100.0);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
    }

    SUBCASE("decoupled survival is constant") {
        const auto h0 =
            oracle::build_hamiltonian(mini_bath(0.0), Eigen::VectorXd::Constant(1, 1.0), basis);
        const Eigen::VectorXcd psi = oracle::exact_evolve(h0, psi0, 37.0);
        CHECK(std::norm(psi.dot(psi0)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("polaron frame map") {
    const DiscreteBath bath = mini_bath(0.2);
    const FockBasis basis = FockBasis::make(3, 10, 1);
    const PolaronSolution sol = solve_single_qubit_fixed_point(bath, 1.0);

    SUBCASE("zero displacement is the identity") {
        PolaronSolution trivial = sol;
        trivial.displacements.setZero();
        Eigen::VectorXcd psi = Eigen::VectorXcd::Random(basis.dimension);
        psi.normalize();
        const auto mapped = oracle::polaron_frame_map(psi, trivial, basis);
        CHECK((mapped.vector - psi).norm() < 1e-13);
        CHECK(mapped.leakage < 1e-13);
    }

    SUBCASE("sigma^x eigenstate maps to a coherent state") {
        // |0, sx=+1> picks up <a_k> = -f_k
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dimension);
        psi[basis.index(0, {0, 0, 0})] = 1.0 / std::sqrt(2.0);
        psi[basis.index(1, {0, 0, 0})] = 1.0 / std::sqrt(2.0);
        const auto mapped = oracle::polaron_frame_map(psi, sol, basis);
        CHECK(mapped.leakage < 1e-10);

        std::vector<int> occ;
        std::size_t spin = 0;
        for (int mode = 0; mode < 3; ++mode) {
            complexd a_expect = 0.0;
            for (std::size_t idx = 0; idx < basis.dimension; ++idx) {
                basis.decode(idx, spin, occ);
                if (occ[mode] == basis.n_max) continue;
                occ[mode] += 1;
                const std::size_t up = basis.index(spin, occ);
                occ[mode] -= 1;
                a_expect += std::conj(mapped.vector[idx]) * mapped.vector[up] *
                            std::sqrt(static_cast<double>(occ[mode] + 1));
            }
            CHECK(std::abs(a_expect - (-sol.displacements(0, mode))) < 1e-9);
        }
    }

    SUBCASE("inverse displacement undoes the map") {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dimension);
        psi[basis.index(1, {1, 0, 0})] = 1.0;
        const auto there = oracle::polaron_frame_map(psi, sol, basis);
        PolaronSolution inverse = sol;
        inverse.displacements = -sol.displacements;
        const auto back = oracle::polaron_frame_map(there.vector, inverse, basis);
        CHECK((back.vector - psi).norm() < 1e-9);
    }
}

TEST_CASE("displacement matrix columns are displaced number states") {
    const complexd beta(0.3, -0.2);
    const Eigen::MatrixXcd d = oracle::displacement_matrix(20, beta);
    // column 0 is the coherent state
    for (int m = 0; m <= 20; ++m) {
        double log_fact = 0.0;
        for (int j = 2; j <= m; ++j) log_fact += std::log(static_cast<double>(j));
        const complexd expected = std::exp(-0.5 * std::norm(beta)) * std::pow(beta, m) /
                                  std::exp(0.5 * log_fact);
        CHECK(std::abs(d(m, 0) - expected) < 1e-12);
    }
    // unitary up to truncation in the low-occupation block
    const Eigen::MatrixXcd gram = d.adjoint() * d;
    CHECK(std::abs(gram(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(gram(5, 5) - 1.0) < 1e-10);
    CHECK(std::abs(gram(0, 5)) < 1e-10);
}

TEST_CASE("variational bound on random instances") {
    std::mt19937_64 rng(2024);
    for (int instance = 0; instance < 6; ++instance) {
        const int modes = 2 + static_cast<int>(instance % 2);
        const DiscreteBath bath = random_bath(rng, modes, 1);
        std::uniform_real_distribution<double> gap_dist(0.5, 1.5);
        const double gap = gap_dist(rng);
        const PolaronSolution sol = solve_single_qubit_fixed_point(bath, gap);
        const FockBasis basis = FockBasis::make(modes, 8, 1);
        const auto h =
            oracle::build_hamiltonian(bath, Eigen::VectorXd::Constant(1, gap), basis);
        const auto gs = oracle::exact_groundstate(h);
        CHECK(sol.groundstate_energy >= gs.energy - 1e-10);
    }
}

TEST_CASE("bound saturates at zero gap") {
    std::mt19937_64 rng(99);
    const DiscreteBath bath = random_bath(rng, 3, 1);
    const PolaronSolution sol = solve_single_qubit_fixed_point(bath, 0.0);
    const FockBasis basis = FockBasis::make(3, 12, 1);
    const auto h = oracle::build_hamiltonian(bath, Eigen::VectorXd::Zero(1), basis);
    const auto gs = oracle::exact_groundstate(h);
    CHECK(std::abs(sol.groundstate_energy - gs.energy) < 1e-10);
}
