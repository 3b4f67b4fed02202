#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "optokerr/params.hpp"
#include "optokerr/steadystate.hpp"

namespace optokerr {

/// Linearized-spectrum coefficients at one frequency (kappa = 1).
///
///   A+- = -i w + i Delta' -+ 4 i |alpha_s|^2 chi_eff + kappa
///   B   = 2 alpha_s^2 chi_eff
///   D   = A+ A- - |B|^2
///   tan(theta / 2) = (Delta' - 2 chi |alpha_s|^2) / kappa
///
/// chi_eff is chi for the BO model and chi Omega^2 zeta(w) for the full model.
/// theta always uses the static operating point.
struct SpectrumCoefficients {
  std::complex<double> aPlus;
  std::complex<double> aMinus;
  std::complex<double> b;
  std::complex<double> d;
  std::complex<double> chiEff;
  double theta = 0.0;
  double deltaPrime = 0.0;
  /// Phase of the drive implied by alpha_s; zero for the real-lambda
  /// convention. B exp(2 i theta) is referenced to it so that a global phase
  /// rotation of the field leaves the spectrum unchanged.
  double drivePhase = 0.0;
};

/// Mechanical susceptibility 1 / (Omega^2 - w^2 - i gamma w). Throws PoleError
/// for gamma = 0 and |w| within 1e-12 Omega of Omega.
std::complex<double> zeta(const ReducedParams& rp, double omega);

SpectrumCoefficients coefficients(const ReducedParams& rp, const SteadyState& ss,
                                  double omega, Model model);

/// |1 - 2 kappa (A- + i B exp(2 i theta)) / D|^2. Throws SingularSpectrum when
/// D vanishes.
double s_intensity(const SpectrumCoefficients& c);
double s_intensity(const ReducedParams& rp, const SteadyState& ss, double omega, Model model);

struct FrequencyRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct SpectrumMinimum {
  double omegaBar = 0.0;
  double sMin = 0.0;
};

/// Global minimum of an arbitrary spectrum over [lo, hi], lo >= 0: a coarse
/// grid of `coarse_points` linear plus as many log-spaced points (when lo > 0),
/// then golden-section refinement to |dw| < 1e-8 around the best grid point.
/// Ties go to the smallest frequency. `extra_points` are merged into the grid.
SpectrumMinimum find_min_frequency(const std::function<double(double)>& spectrum,
                                   FrequencyRange range, std::size_t coarse_points = 2048,
                                   std::span<const double> extra_points = {});

/// Minimum of S_I at the operating point `ss`. For the full model a dense
/// patch around the mechanical resonance is added to the coarse grid.
SpectrumMinimum find_min_frequency(const ReducedParams& rp, const SteadyState& ss,
                                   Model model, FrequencyRange range);

/// 4096 log-spaced points over [1e-3, 10 Omega].
std::vector<double> default_omega_grid(const ReducedParams& rp, std::size_t points = 4096);
FrequencyRange default_omega_range(const ReducedParams& rp);

struct SpectrumCurve {
  Model model = Model::BO;
  double delta = 0.0;
  std::vector<double> omegas;
  std::vector<double> values;
  SteadyState steady;
};

SpectrumCurve compute_spectrum(const ReducedParams& rp, Model model, std::span<const double> omegas,
                               XsConvention xs = XsConvention::Literal,
                               BranchSelection branch = BranchSelection::lowest_stable());

enum class OmegaBarPolicy {
  PerPoint,       ///< minimize S_I separately at every detuning
  FixedFromZero,  ///< use the minimizing frequency found at Delta = 0
};

enum class ScanModels { BO, Full, Both };

struct ScanOptions {
  OmegaBarPolicy policy = OmegaBarPolicy::PerPoint;
  ScanModels models = ScanModels::Both;
  XsConvention xs = XsConvention::Literal;
  BranchSelection branch = BranchSelection::lowest_stable();
  std::optional<FrequencyRange> omegaRange;  ///< default_omega_range when empty
  unsigned threads = 1;
};

struct ScanPoint {
  double s = 0.0;
  double omegaBar = 0.0;
  std::size_t branch = 0;
  std::size_t rootCount = 1;
  bool stable = true;
};

struct ScanRow {
  double deltaOverOmega = 0.0;
  std::optional<ScanPoint> bo;
  std::optional<ScanPoint> full;
};

/// S_I(w_bar) against Delta / Omega. Rows come back in grid order whatever
/// the thread count.
std::vector<ScanRow> detuning_scan(const ReducedParams& rp, std::span<const double> deltaOverOmega,
                                   const ScanOptions& options = {});

}  // namespace optokerr
