#pragma once

#include <optional>

namespace optokerr {

namespace constants {
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;
}  // namespace constants

/// SI description of the cavity, the mirror and the drive.
struct PhysicalParams {
  double m = 0.0;       ///< mirror mass [kg]
  double Omega = 0.0;   ///< mirror angular frequency [rad/s]
  double gamma = 0.0;   ///< mirror damping rate [1/s]
  double kappa = 0.0;   ///< cavity field decay rate [1/s]
  double omega0 = 0.0;  ///< cavity resonance [rad/s]
  double omegaD = 0.0;  ///< drive angular frequency [rad/s]
  double L = 0.0;       ///< cavity length [m]
  double P = 0.0;       ///< drive power [W]
  std::optional<double> finesse;  ///< informational only

  /// Throws InvalidParameter unless m, Omega, kappa, omega0, omegaD, L > 0
  /// and gamma, P >= 0 (all finite).
  void validate() const;
};

/// Dimensionless model parameters. Rates are in units of kappa; hbar = 1 and
/// the mirror mass is the unit of mass, so chi = g_red^2 / (2 Omega^2) for
/// any set produced by reduce().
struct ReducedParams {
  double Delta = 0.0;  ///< detuning omega0 - omegaD
  double Omega = 1.0;  ///< mirror frequency
  double gamma = 0.0;  ///< mirror damping
  double chi = 0.0;    ///< Kerr susceptibility
  double lam = 0.0;    ///< drive amplitude (real, nonnegative)
  double g_red = 0.0;  ///< optomechanical coupling, length unit sqrt(hbar/(m kappa))

  /// Throws InvalidParameter unless chi, lam, gamma >= 0, Omega > 0, all finite.
  void validate() const;
};

/// Rates recovered from a reduced set by multiplying with kappa.
struct PhysicalRates {
  double Delta;
  double Omega;
  double gamma;
  double chi;
  double lam;
};

/// g = omega0 / L [rad/(s m)].
double derive_g(const PhysicalParams& p);

/// Induced Kerr susceptibility chi = hbar g^2 / (2 m Omega^2) [1/s].
double derive_chi(const PhysicalParams& p);

/// Drive amplitude |lambda| = sqrt(2 P kappa / (hbar omegaD)) [1/s], taken real
/// and positive.
double derive_lambda(const PhysicalParams& p);

/// Length unit of the reduced system, sqrt(hbar / (m kappa)) [m].
double reduced_length_unit(const PhysicalParams& p);

ReducedParams reduce(const PhysicalParams& p);

PhysicalRates rescale(const ReducedParams& rp, double kappa);

/// Recovers g [rad/(s m)] from its reduced value.
double physical_coupling(double g_red, double kappa, double m);

/// True when the adiabatic separation Omega >> |Delta| holds, judged as
/// Omega >= ratio * |Delta|.
bool bo_condition_holds(const ReducedParams& rp, double ratio = 10.0);

}  // namespace optokerr
