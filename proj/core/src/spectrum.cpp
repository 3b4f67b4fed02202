#include "optokerr/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "optokerr/errors.hpp"

namespace optokerr {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

ScanPoint scan_point(const ReducedParams& rp, Model model, const ScanOptions& options,
                     FrequencyRange range, std::optional<double> fixed_omega) {
  const auto ss = solve_steady_state(rp, model, options.xs, options.branch);
  ScanPoint pt;
  pt.branch = ss.branch_index;
  pt.rootCount = ss.roots.size();
  pt.stable = ss.stable;
  if (fixed_omega) {
    pt.omegaBar = *fixed_omega;
    pt.s = s_intensity(rp, ss, *fixed_omega, model);
  } else {
    const auto min = find_min_frequency(rp, ss, model, range);
    pt.omegaBar = min.omegaBar;
    pt.s = min.sMin;
  }
  return pt;
}

}  // namespace

cd zeta(const ReducedParams& rp, double omega) {
  if (rp.gamma == 0.0 && std::abs(std::abs(omega) - rp.Omega) < 1e-12 * rp.Omega) {
    throw PoleError("mechanical susceptibility has a pole at omega = Omega for gamma = 0");
  }
  return 1.0 / cd(rp.Omega * rp.Omega - omega * omega, -rp.gamma * omega);
}

SpectrumCoefficients coefficients(const ReducedParams& rp, const SteadyState& ss,
                                  double omega, Model model) {
  SpectrumCoefficients c;
  const double I = std::norm(ss.alpha_s);
  const double effective = ss.delta_prime - 2.0 * rp.chi * I;

  c.deltaPrime = ss.delta_prime;
  c.theta = 2.0 * std::atan2(effective, 1.0);
  c.drivePhase = I > 0.0 ? std::arg(ss.alpha_s * cd(1.0, effective)) : 0.0;
  c.chiEff = model == Model::BO ? cd(rp.chi)
                                : rp.chi * rp.Omega * rp.Omega * zeta(rp, omega);

  const cd common = cd(1.0, ss.delta_prime - omega);
  const cd kerr = 4.0 * kI * I * c.chiEff;
  c.aPlus = common - kerr;
  c.aMinus = common + kerr;
  c.b = 2.0 * ss.alpha_s * ss.alpha_s * c.chiEff;
  c.d = c.aPlus * c.aMinus - std::norm(c.b);
  return c;
}

double s_intensity(const SpectrumCoefficients& c) {
  const double scale = std::abs(c.aPlus) * std::abs(c.aMinus) + std::norm(c.b);
  if (!(std::abs(c.d) > 1e-14 * scale)) {
    throw SingularSpectrum("spectrum denominator D vanishes (instability threshold)");
  }
  const cd phase = std::polar(1.0, 2.0 * c.theta - 2.0 * c.drivePhase);
  const cd ratio = (c.aMinus + kI * c.b * phase) / c.d;
  return std::norm(1.0 - 2.0 * ratio);
}

double s_intensity(const ReducedParams& rp, const SteadyState& ss, double omega, Model model) {
  return s_intensity(coefficients(rp, ss, omega, model));
}

SpectrumMinimum find_min_frequency(const std::function<double(double)>& spectrum,
                                   FrequencyRange range, std::size_t coarse_points,
                                   std::span<const double> extra_points) {
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || range.lo < 0.0 ||
      !(range.hi > range.lo)) {
    throw InvalidParameter("frequency range must satisfy 0 <= lo < hi < inf");
  }
  coarse_points = std::max<std::size_t>(coarse_points, 2);

  std::vector<double> grid;
  grid.reserve(2 * coarse_points + extra_points.size());
  const double span = range.hi - range.lo;
  for (std::size_t i = 0; i < coarse_points; ++i) {
    grid.push_back(range.lo + span * static_cast<double>(i) / static_cast<double>(coarse_points - 1));
  }
  if (range.lo > 0.0) {
    const double ratio = std::log(range.hi / range.lo);
    for (std::size_t i = 1; i + 1 < coarse_points; ++i) {
      grid.push_back(range.lo * std::exp(ratio * static_cast<double>(i) /
                                         static_cast<double>(coarse_points - 1)));
    }
  }
  for (double w : extra_points) {
    if (w >= range.lo && w <= range.hi) grid.push_back(w);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // Improvements below round-off count as ties.
  const auto better = [](double v, double best) {
    return v < best - 1e-14 * std::max(1.0, std::abs(best));
  };
  std::size_t best = 0;
  double best_value = spectrum(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = spectrum(grid[i]);
    if (better(v, best_value)) {
      best = i;
      best_value = v;
    }
  }

  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  SpectrumMinimum result{grid[best], best_value};
  if (b > a) {
    const double w = golden_section(spectrum, a, b, 1e-8);
    const double v = spectrum(w);
    if (better(v, best_value)) result = {w, v};
  }
  return result;
}

SpectrumMinimum find_min_frequency(const ReducedParams& rp, const SteadyState& ss,
                                   Model model, FrequencyRange range) {
  std::vector<double> extra;
  if (model == Model::Full && rp.gamma > 0.0) {
    // The mechanical resonance is only ~gamma wide; make sure the coarse grid sees it.
    const double half = 20.0 * rp.gamma;
    constexpr int kPatch = 512;
    for (int i = 0; i <= kPatch; ++i) {
      extra.push_back(rp.Omega - half + 2.0 * half * i / kPatch);
    }
  }
  return find_min_frequency(
      [&](double w) { return s_intensity(rp, ss, w, model); }, range, 2048, extra);
}

FrequencyRange default_omega_range(const ReducedParams& rp) {
  return {1e-3, 10.0 * rp.Omega};
}

std::vector<double> default_omega_grid(const ReducedParams& rp, std::size_t points) {
  const auto range = default_omega_range(rp);
  std::vector<double> grid(points);
  const double ratio = std::log(range.hi / range.lo);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points > 1 ? static_cast<double>(i) / static_cast<double>(points - 1) : 0.0;
    grid[i] = range.lo * std::exp(ratio * t);
  }
  grid.back() = range.hi;
  return grid;
}

SpectrumCurve compute_spectrum(const ReducedParams& rp, Model model, std::span<const double> omegas,
                               XsConvention xs, BranchSelection branch) {
  SpectrumCurve curve;
  curve.model = model;
  curve.delta = rp.Delta;
  curve.steady = solve_steady_state(rp, model, xs, branch);
  curve.omegas.assign(omegas.begin(), omegas.end());
  curve.values.reserve(omegas.size());
  for (double w : omegas) curve.values.push_back(s_intensity(rp, curve.steady, w, model));
  return curve;
}

std::vector<ScanRow> detuning_scan(const ReducedParams& rp, std::span<const double> deltaOverOmega,
                                   const ScanOptions& options) {
  rp.validate();
  const auto range = options.omegaRange.value_or(default_omega_range(rp));
  const bool want_bo = options.models != ScanModels::Full;
  const bool want_full = options.models != ScanModels::BO;

  std::optional<double> fixed_bo;
  std::optional<double> fixed_full;
  if (options.policy == OmegaBarPolicy::FixedFromZero) {
    ReducedParams at_zero = rp;
    at_zero.Delta = 0.0;
    if (want_bo) fixed_bo = scan_point(at_zero, Model::BO, options, range, {}).omegaBar;
    if (want_full) fixed_full = scan_point(at_zero, Model::Full, options, range, {}).omegaBar;
  }

  std::vector<ScanRow> rows(deltaOverOmega.size());
  std::vector<std::exception_ptr> errors(rows.size());
  const auto work = [&](std::size_t i) {
    try {
      ReducedParams local = rp;
      local.Delta = deltaOverOmega[i] * rp.Omega;
      rows[i].deltaOverOmega = deltaOverOmega[i];
      if (want_bo) rows[i].bo = scan_point(local, Model::BO, options, range, fixed_bo);
      if (want_full) rows[i].full = scan_point(local, Model::Full, options, range, fixed_full);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(rows.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < rows.size(); i += threads) work(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

}  // namespace optokerr
