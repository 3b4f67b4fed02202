#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "optokerr/params.hpp"

namespace optokerr {

/// Which linearized model an operating point or spectrum belongs to.
enum class Model { BO, Full };

/// How the full model's mirror displacement x_s enters the detuning
/// Delta - g x_s.
enum class XsConvention {
  Literal,       ///< x_s = chi |a_s|^2, as written alongside the full spectrum
  ForceBalance,  ///< m Omega^2 x_s = hbar g |a_s|^2 (reduced: x_s = g I / Omega^2)
  BoMatched,     ///< g x_s = chi, so both models share Delta' = Delta - chi
};

/// Intensity-dependent renormalized detuning Delta'(I) = base - slope * I.
/// The steady-state condition then reads
///   lam^2 = I ((Delta'(I) - 2 chi I)^2 + 1)     (kappa = 1).
struct DetuningLaw {
  double base = 0.0;
  double slope = 0.0;

  double at(double intensity) const { return base - slope * intensity; }
};

DetuningLaw detuning_law(const ReducedParams& rp, Model model,
                         XsConvention xs = XsConvention::Literal);

/// Mirror steady displacement in reduced units for the given convention.
double mirror_displacement(const ReducedParams& rp, double intensity, XsConvention xs);

struct BranchSelection {
  enum class Kind { LowestStable, Lowest, Highest, Index, RequireUnique };
  Kind kind = Kind::LowestStable;
  std::size_t index = 0;

  static BranchSelection lowest_stable() { return {Kind::LowestStable, 0}; }
  static BranchSelection lowest() { return {Kind::Lowest, 0}; }
  static BranchSelection highest() { return {Kind::Highest, 0}; }
  static BranchSelection at(std::size_t k) { return {Kind::Index, k}; }
  static BranchSelection require_unique() { return {Kind::RequireUnique, 0}; }
};

struct SteadyState {
  std::complex<double> alpha_s;  ///< cavity amplitude, kappa units
  double intensity = 0.0;        ///< |alpha_s|^2
  std::size_t branch_index = 0;  ///< position among the ascending roots
  std::vector<double> roots;     ///< every real intensity root, ascending
  bool stable = true;
  double delta_prime = 0.0;      ///< Delta' evaluated at this intensity
  double x_s = 0.0;              ///< mirror displacement (full model only)

  /// Delta' - 2 chi I, the detuning seen by the stationary field.
  double effective_detuning(double chi) const { return delta_prime - 2.0 * chi * intensity; }
};

/// Real nonnegative roots of lam^2 = I ((deltaPrime - 2 chi I)^2 + 1),
/// ascending, deduplicated at relative 1e-9.
std::vector<double> intensity_roots(const ReducedParams& rp, double deltaPrime);

/// Same, for an intensity-dependent Delta'.
std::vector<double> intensity_roots(const ReducedParams& rp, const DetuningLaw& law);

/// Steady state at a fixed Delta'. Throws BranchOutOfRange or MultivaluedState.
SteadyState steady_amplitude(const ReducedParams& rp, double deltaPrime,
                             BranchSelection branch = BranchSelection::lowest_stable());

SteadyState steady_amplitude(const ReducedParams& rp, const DetuningLaw& law,
                             BranchSelection branch = BranchSelection::lowest_stable());

/// Operating point of the BO or full model at rp.Delta.
SteadyState solve_steady_state(const ReducedParams& rp, Model model,
                               XsConvention xs = XsConvention::Literal,
                               BranchSelection branch = BranchSelection::lowest_stable());

/// Linearized drift matrix of the fluctuations (delta a, delta a^dagger):
///   [ kappa + i(Delta' - 4 chi I)      -i B                      ]
///   [ i conj(B)                        kappa - i(Delta' - 4 chi I) ]
/// with B = 2 chi alpha_s^2. Stable iff both eigenvalues have positive real part.
bool stability_check(const ReducedParams& rp, double deltaPrime, std::complex<double> alpha_s);

/// lam^2 - I ((deltaPrime - 2 chi I)^2 + 1).
double cubic_residual(const ReducedParams& rp, double deltaPrime, double intensity);

}  // namespace optokerr
