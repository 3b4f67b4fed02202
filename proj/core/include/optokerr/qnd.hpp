#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>

#include "optokerr/bostructure.hpp"

namespace optokerr {

/// Two cavities (signal L, probe R) sharing one mirror. Tensor basis index is
/// nL * dimR + nR.
struct QndParams {
  double chiL = 0.0;
  double chiR = 0.0;
  double deltaL = 0.0;
  double deltaR = 0.0;
  std::size_t dimL = 10;
  std::size_t dimR = 10;
  /// Cross-Kerr coefficient of the induced interaction; 2 sqrt(chiL chiR) when unset.
  std::optional<double> chiCross;
  /// Coupling of the measurement Hamiltonian; sqrt(chiL chiR) when unset.
  std::optional<double> chi;
  /// Sign of the cross term inside the overall minus of H_eff. +1 assumes the
  /// two fields push the mirror the same way; -1 the opposite.
  int crossSign = +1;

  double cross() const;
  double coupling() const;
  void validate() const;
};

/// -(chiL nL^2 + chiR nR^2 + s chiCross nL nR), diagonal.
OperatorMatrix build_h_eff(const QndParams& q);

/// deltaL nL + deltaR nR + 2 chi nL nR, diagonal.
OperatorMatrix build_h_qnd(const QndParams& q);

/// nL (x) 1 and 1 (x) nR.
Eigen::MatrixXcd signal_number(const QndParams& q);
Eigen::MatrixXcd probe_number(const QndParams& q);

/// i lam (aL^dagger - aL) (x) 1, the drive of the signal cavity.
Eigen::MatrixXcd signal_drive(const QndParams& q, double lam);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& m);

struct CommutatorNorms {
  double cL = 0.0;
  double cR = 0.0;
};

/// Spectral norms of [H, nL (x) 1] and [H, 1 (x) nR].
CommutatorNorms qnd_commutator_norms(const QndParams& q);
CommutatorNorms commutator_norms(const QndParams& q, const Eigen::MatrixXcd& h);

/// (deltaR + 2 chi nL) t reduced to [0, 2 pi): the clockwise rotation of the
/// probe amplitude <aR> when the signal holds nL photons. Throws for t < 0.
double probe_phase_shift(const QndParams& q, int nL, double t);

/// exp(-i H t) psi for a diagonal H (exact phase propagation).
Eigen::VectorXcd evolve_diagonal(const OperatorMatrix& h, const Eigen::VectorXcd& psi, double t);

/// |nL> (x) |beta> with the coherent probe truncated to dimR (and renormalized).
Eigen::VectorXcd signal_fock_probe_coherent(const QndParams& q, int nL, std::complex<double> beta);

struct PropagatedPhase {
  double phase = 0.0;
  bool truncation_sufficient = true;  ///< coherent probe norm in dimR >= 1 - 1e-8
};

/// The same rotation read off from exact evolution of |nL> (x) |beta> under
/// H_QND: -arg(<aR>(t) / beta), reduced to [0, 2 pi).
PropagatedPhase propagated_probe_phase(const QndParams& q, int nL, std::complex<double> beta,
                                       double t);

/// a - b reduced to (-pi, pi].
double wrap_difference(double a, double b);

}  // namespace optokerr
