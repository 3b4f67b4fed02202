#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "optokerr/params.hpp"

namespace optokerr {

enum class Basis { MirrorNumber, PhotonNumber, Tensor };

/// Dense complex matrix of an operator in a truncated number basis.
class OperatorMatrix {
 public:
  /// Throws InvalidParameter when dim < 2, the matrix is not square, or the
  /// hermitian flag is set on a matrix with max|M - M^dagger| > 1e-12 ||M||.
  OperatorMatrix(Basis basis, Eigen::MatrixXcd entries, bool hermitian);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  Basis basis() const { return basis_; }
  bool hermitian() const { return hermitian_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::complex<double> operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Basis basis_;
  Eigen::MatrixXcd entries_;
  bool hermitian_;
};

/// max|M - M^dagger| / max(1, max|M|).
double hermiticity_defect(const Eigen::MatrixXcd& m);

Eigen::MatrixXcd annihilation(std::size_t dim);
Eigen::MatrixXcd number_operator(std::size_t dim);

/// Mirror oscillator in reduced units (hbar = 1). `coupling` is g, so the BO
/// Kerr coefficient is g^2 / (2 m Omega^2).
struct MirrorModel {
  double mass = 1.0;
  double omega = 1.0;
  double coupling = 0.0;

  double chi() const { return coupling * coupling / (2.0 * mass * omega * omega); }

  /// Unit mass, Omega and g_red taken from a reduced set.
  static MirrorModel from(const ReducedParams& rp);
};

Eigen::MatrixXcd position_operator(const MirrorModel& mirror, std::size_t dim);
Eigen::MatrixXcd momentum_operator(const MirrorModel& mirror, std::size_t dim);

/// p^2/2m + m Omega^2 x^2 / 2 - g N x in the unshifted mirror number basis,
/// with the photon number frozen at N. The oscillator part is written as its
/// exact diagonal Omega (n + 1/2) so the top row carries no truncation error.
/// Requires dim >= 8.
OperatorMatrix build_mirror_hamiltonian(const MirrorModel& mirror, int N, std::size_t dim);

/// Closed-form BO levels V_n(N) = Omega (n + 1/2) - chi N^2 for n = 0..n_max.
struct BOLevels {
  int N = 0;
  std::vector<double> levels;
  /// Shift of the mirror mode, A = a + alpha: alpha = -g N / sqrt(2 m Omega^3).
  double alpha = 0.0;
};

BOLevels bo_levels(const MirrorModel& mirror, int N, int n_max);

/// The displacement as printed next to the shifted operator,
/// -sqrt(2 g^2 N^2 / (m Omega^3)); twice the value diagonalization gives.
double printed_alpha(const MirrorModel& mirror, int N);

/// Lowest eigenvalues of build_mirror_hamiltonian with the truncation grown
/// (in steps of 40 from min_dim) until no requested level moves by more than
/// tol relative between successive sizes.
struct NumericLevels {
  std::vector<double> levels;
  std::size_t dim = 0;
};

NumericLevels numeric_levels(const MirrorModel& mirror, int N, std::size_t count,
                             std::size_t min_dim = 120, double tol = 1e-10);

/// Delta n - chi n^2 + i lam (a^dagger - a) in the photon number basis; the
/// additive constant of the BO potential is dropped.
OperatorMatrix effective_photon_hamiltonian(const ReducedParams& rp, std::size_t photon_dim);

enum class DisplacementConvention {
  Standard,   ///< exp(beta a^dagger - conj(beta) a)
  AsWritten,  ///< exp(i beta a^dagger - i conj(beta) a)
};

/// Exact exponential of the truncated generator (unitary by construction).
Eigen::MatrixXcd displacement_operator(std::complex<double> beta, std::size_t dim,
                                       DisplacementConvention convention =
                                           DisplacementConvention::Standard);

/// Norm of a coherent state of amplitude beta restricted to the first dim
/// number states.
double coherent_norm_in_truncation(std::complex<double> beta, std::size_t dim);

struct GroundStateCheck {
  double fidelity = 0.0;
  double coherent_norm = 1.0;
  bool truncation_sufficient = true;  ///< coherent_norm >= 1 - 1e-8
};

/// Overlap between the numeric ground state of the mirror Hamiltonian and the
/// displaced vacuum annihilated by A = a + alpha. In the standard convention
/// that state is exp(-alpha a^dagger + alpha a)|0>; AsWritten applies
/// exp(i alpha a^dagger - i alpha a) instead.
GroundStateCheck displaced_ground_state_check(
    const MirrorModel& mirror, int N, std::size_t dim,
    DisplacementConvention convention = DisplacementConvention::Standard);

}  // namespace optokerr
