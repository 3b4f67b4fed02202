#include <doctest.h>

#include <cmath>
#include <random>

#include "optokerr/bostructure.hpp"
#include "optokerr/errors.hpp"

using namespace optokerr;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

Eigen::VectorXd eigenvalues(const OperatorMatrix& h) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

TEST_CASE("OperatorMatrix invariants") {
  CHECK_THROWS_AS(OperatorMatrix(Basis::PhotonNumber, Eigen::MatrixXcd::Zero(1, 1), false),
                  InvalidParameter);
  CHECK_THROWS_AS(OperatorMatrix(Basis::PhotonNumber, Eigen::MatrixXcd::Zero(2, 3), false),
                  InvalidParameter);
  const Eigen::MatrixXcd a = annihilation(4);
  CHECK_THROWS_AS(OperatorMatrix(Basis::PhotonNumber, a, true), InvalidParameter);
  CHECK_NOTHROW(OperatorMatrix(Basis::PhotonNumber, a, false));
  const OperatorMatrix n(Basis::PhotonNumber, number_operator(4), true);
  CHECK(n.dim() == 4);
  CHECK(n(3, 3) == cd(3.0));
}

TEST_CASE("ladder operators") {
  const auto a = annihilation(6);
  CHECK(a(0, 1) == cd(1.0));
  CHECK(a(2, 3).real() == Approx(std::sqrt(3.0)));
  const Eigen::MatrixXcd n = a.adjoint() * a;
  CHECK((n - number_operator(6)).cwiseAbs().maxCoeff() <= 1e-14);

  const MirrorModel mirror{1.3, 2.1, 0.4};
  const auto x = position_operator(mirror, 30);
  const auto p = momentum_operator(mirror, 30);
  // [x, p] = i away from the truncation edge.
  const Eigen::MatrixXcd comm = x * p - p * x;
  for (int i = 0; i < 25; ++i) CHECK(std::abs(comm(i, i) - cd(0.0, 1.0)) <= 1e-12);
}

TEST_CASE("build_mirror_hamiltonian") {
  SUBCASE("N = 0 is the bare oscillator") {
    const MirrorModel mirror{1.0, 2.0, 1.0};
    const auto ev = eigenvalues(build_mirror_hamiltonian(mirror, 0, 40));
    for (int n = 0; n < 10; ++n) CHECK(ev(n) == Approx(2.0 * (n + 0.5)).epsilon(1e-14));
  }
  SUBCASE("g = 0 matches N = 0") {
    const MirrorModel mirror{1.0, 2.0, 0.0};
    const auto ev3 = eigenvalues(build_mirror_hamiltonian(mirror, 3, 40));
    const auto ev0 = eigenvalues(build_mirror_hamiltonian(mirror, 0, 40));
    CHECK((ev3 - ev0).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("generic case against the closed form") {
    // Omega = 2, g = 1, m = 1, N = 3, dim = 120.
    const MirrorModel mirror{1.0, 2.0, 1.0};
    const auto h = build_mirror_hamiltonian(mirror, 3, 120);
    CHECK(h.hermitian());
    CHECK(h.basis() == Basis::MirrorNumber);
    const auto ev = eigenvalues(h);
    const auto closed = bo_levels(mirror, 3, 9);
    for (int n = 0; n < 10; ++n) {
      CHECK(std::abs(ev(n) - closed.levels[n]) <= 1e-8 * std::abs(closed.levels[n]));
    }
  }
  SUBCASE("errors") {
    const MirrorModel mirror{1.0, 2.0, 1.0};
    CHECK_THROWS_AS(build_mirror_hamiltonian(mirror, 1, 7), InvalidParameter);
    CHECK_THROWS_AS(build_mirror_hamiltonian(mirror, -1, 20), InvalidParameter);
    CHECK_THROWS_AS(build_mirror_hamiltonian({0.0, 2.0, 1.0}, 1, 20), InvalidParameter);
  }
}

TEST_CASE("bo_levels") {
  const MirrorModel mirror{1.0, 3.0, 0.7};
  const auto zero = bo_levels(mirror, 0, 4);
  CHECK(zero.alpha == 0.0);
  for (int n = 0; n <= 4; ++n) CHECK(zero.levels[n] == Approx(3.0 * (n + 0.5)));

  const auto one = bo_levels(mirror, 1, 4);
  for (int n = 0; n <= 4; ++n) CHECK(one.levels[n] == Approx(3.0 * (n + 0.5) - mirror.chi()));
  CHECK(mirror.chi() == Approx(0.49 / 18.0));

  for (std::size_t n = 1; n < one.levels.size(); ++n) {
    CHECK(one.levels[n] - one.levels[n - 1] == Approx(3.0).epsilon(1e-10));
  }

  const auto three = bo_levels(mirror, 3, 5);
  const auto numeric = numeric_levels(mirror, 3, 6);
  CHECK(numeric.dim >= 120);
  for (int n = 0; n < 6; ++n) CHECK(numeric.levels[n] == Approx(three.levels[n]).epsilon(1e-8));

  CHECK(three.alpha < 0.0);
  CHECK(three.alpha == Approx(-0.7 * 3 / std::sqrt(2.0 * 27.0)));
  CHECK(printed_alpha(mirror, 3) == Approx(2.0 * three.alpha));
}

TEST_CASE("closed-form levels agree with diagonalization for random mirrors") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mass(0.5, 2.0);
  std::uniform_real_distribution<double> omega(0.5, 3.0);
  std::uniform_real_distribution<double> coupling(0.05, 0.6);
  for (int trial = 0; trial < 4; ++trial) {
    const MirrorModel mirror{mass(rng), omega(rng), coupling(rng)};
    for (int N : {0, 1, 2, 3, 5}) {
      const auto numeric = numeric_levels(mirror, N, 6);
      const auto closed = bo_levels(mirror, N, 5);
      for (int n = 0; n < 6; ++n) {
        CHECK(std::abs(numeric.levels[n] - closed.levels[n]) <= 1e-8 * std::abs(closed.levels[n]));
      }
    }
  }
}

TEST_CASE("effective_photon_hamiltonian") {
  ReducedParams rp;
  rp.Delta = 1.0;
  rp.chi = 0.1;
  rp.lam = 0.0;
  const auto h = effective_photon_hamiltonian(rp, 6);
  CHECK(h.basis() == Basis::PhotonNumber);
  CHECK(h(2, 2).real() == Approx(1.6));
  for (std::size_t n = 0; n < 6; ++n) {
    const double nd = static_cast<double>(n);
    CHECK(h(n, n).real() == Approx(nd - 0.1 * nd * nd));
  }
  CHECK(h.entries().isDiagonal(0.0));

  const Eigen::MatrixXcd num = number_operator(6);
  const Eigen::MatrixXcd comm = h.entries() * num - num * h.entries();
  CHECK(comm.norm() <= 1e-14 * h.entries().norm());

  rp.Delta = 0.0;
  rp.chi = 0.0;
  rp.lam = 0.8;
  const auto drive = effective_photon_hamiltonian(rp, 5);
  CHECK(drive.hermitian());
  const Eigen::MatrixXcd a = annihilation(5);
  CHECK((drive.entries() - cd(0.0, 0.8) * (a.adjoint() - a)).cwiseAbs().maxCoeff() <= 1e-15);

  CHECK_THROWS_AS(effective_photon_hamiltonian(rp, 1), InvalidParameter);
}

TEST_CASE("displacement operator") {
  const cd beta(0.8, -0.3);
  const auto d = displacement_operator(beta, 60);
  // Unitary within the reliable block.
  const Eigen::MatrixXcd block = (d.adjoint() * d).topLeftCorner(30, 30);
  CHECK((block - Eigen::MatrixXcd::Identity(30, 30)).cwiseAbs().maxCoeff() <= 1e-10);

  // D|0> is the coherent state of amplitude beta.
  const Eigen::VectorXcd psi = d.col(0);
  const Eigen::MatrixXcd a = annihilation(60);
  CHECK(std::abs(psi.dot(a * psi) - beta) <= 1e-10);

  // The as-written form displaces by i beta.
  const Eigen::VectorXcd phi = displacement_operator(beta, 60, DisplacementConvention::AsWritten).col(0);
  CHECK(std::abs(phi.dot(a * phi) - cd(0.0, 1.0) * beta) <= 1e-10);

  CHECK(coherent_norm_in_truncation(beta, 60) == Approx(1.0).epsilon(1e-14));
  CHECK(coherent_norm_in_truncation(cd(4.0, 0.0), 10) < 1.0 - 1e-3);
}

TEST_CASE("ground state is the displaced vacuum") {
  SUBCASE("N = 0") {
    const auto check = displaced_ground_state_check({1.0, 2.0, 1.0}, 0, 40);
    CHECK(check.fidelity == Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("g = 0") {
    const auto check = displaced_ground_state_check({1.0, 2.0, 0.0}, 4, 40);
    CHECK(check.fidelity == Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("generic small displacement") {
    const MirrorModel mirror{1.0, 2.0, 1.0};
    const auto check = displaced_ground_state_check(mirror, 3, 120);
    CHECK(check.truncation_sufficient);
    CHECK(check.fidelity >= 1.0 - 1e-8);
    // The as-written phase convention moves the state off the ground state.
    const auto literal =
        displaced_ground_state_check(mirror, 3, 120, DisplacementConvention::AsWritten);
    CHECK(literal.fidelity < 0.99);
  }
  SUBCASE("truncation warning") {
    const auto check = displaced_ground_state_check({1.0, 0.5, 3.0}, 5, 20);
    CHECK_FALSE(check.truncation_sufficient);
  }
}
