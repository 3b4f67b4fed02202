#include "optokerr/steadystate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "optokerr/errors.hpp"

namespace optokerr {
namespace {

using cd = std::complex<double>;

// f(I) = I ((b - k I)^2 + 1) - lam^2 and its derivative.
double cubic_value(double b, double k, double lam2, double I) {
  const double d = b - k * I;
  return I * (d * d + 1.0) - lam2;
}

double cubic_slope(double b, double k, double I) {
  const double d = b - k * I;
  return d * d + 1.0 - 2.0 * k * I * d;
}

double polish(double b, double k, double lam2, double I) {
  for (int it = 0; it < 8; ++it) {
    const double f = cubic_value(b, k, lam2, I);
    const double df = cubic_slope(b, k, I);
    if (f == 0.0 || df == 0.0) break;
    const double next = I - f / df;
    if (!(next >= 0.0) ||
        std::abs(cubic_value(b, k, lam2, next)) >= std::abs(f)) {
      break;
    }
    I = next;
  }
  return I;
}

// Real roots of u^3 - 2 b u^2 + (b^2 + 1) u - c = 0 via the companion matrix.
std::vector<double> scaled_cubic_roots(double b, double c) {
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(0, 2) = c;
  companion(1, 2) = -(b * b + 1.0);
  companion(2, 2) = 2.0 * b;
  const Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  std::vector<double> out;
  for (const cd& z : solver.eigenvalues()) {
    if (std::abs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z))) out.push_back(z.real());
  }
  return out;
}

std::vector<double> roots_for(const ReducedParams& rp, const DetuningLaw& law) {
  rp.validate();
  if (!std::isfinite(law.base) || !std::isfinite(law.slope)) {
    throw InvalidParameter("detuning must be finite");
  }
  const double lam2 = rp.lam * rp.lam;
  if (lam2 == 0.0) return {0.0};

  const double b = law.base;
  const double k = 2.0 * rp.chi + law.slope;
  if (k == 0.0) return {lam2 / (b * b + 1.0)};

  std::vector<double> raw;
  for (double u : scaled_cubic_roots(b, lam2 * k)) {
    const double I = polish(b, k, lam2, std::max(0.0, u / k));
    if (I >= 0.0) raw.push_back(I);
  }
  // The cubic always has a positive real root when k > 0; for k < 0 as well,
  // since f(0) = -lam^2 < 0 and f grows without bound.
  std::sort(raw.begin(), raw.end());
  std::vector<double> out;
  for (double I : raw) {
    if (out.empty() || std::abs(I - out.back()) > 1e-9 * std::max(1.0, std::abs(I))) {
      out.push_back(I);
    }
  }
  return out;
}

std::size_t pick_branch(const std::vector<double>& roots, const std::vector<bool>& stable,
                        BranchSelection branch) {
  using Kind = BranchSelection::Kind;
  switch (branch.kind) {
    case Kind::Lowest:
      return 0;
    case Kind::Highest:
      return roots.size() - 1;
    case Kind::Index:
      if (branch.index >= roots.size()) {
        throw BranchOutOfRange("branch index " + std::to_string(branch.index) +
                               " out of range (" + std::to_string(roots.size()) +
                               " roots)");
      }
      return branch.index;
    case Kind::RequireUnique:
      if (roots.size() != 1) {
        throw MultivaluedState("steady state is not unique (" +
                                   std::to_string(roots.size()) + " roots)",
                               roots);
      }
      return 0;
    case Kind::LowestStable:
      for (std::size_t i = 0; i < roots.size(); ++i) {
        if (stable[i]) return i;
      }
      return 0;
  }
  return 0;
}

cd amplitude(double lam, double effective_detuning) {
  return lam / cd(1.0, effective_detuning);
}

}  // namespace

DetuningLaw detuning_law(const ReducedParams& rp, Model model, XsConvention xs) {
  if (model == Model::BO || xs == XsConvention::BoMatched) {
    return {rp.Delta - rp.chi, 0.0};
  }
  if (xs == XsConvention::Literal) return {rp.Delta, rp.g_red * rp.chi};
  return {rp.Delta, rp.g_red * rp.g_red / (rp.Omega * rp.Omega)};
}

double mirror_displacement(const ReducedParams& rp, double intensity, XsConvention xs) {
  switch (xs) {
    case XsConvention::Literal:
      return rp.chi * intensity;
    case XsConvention::ForceBalance:
      return rp.g_red * intensity / (rp.Omega * rp.Omega);
    case XsConvention::BoMatched:
      return rp.g_red != 0.0 ? rp.chi / rp.g_red : 0.0;
  }
  return 0.0;
}

std::vector<double> intensity_roots(const ReducedParams& rp, double deltaPrime) {
  return roots_for(rp, {deltaPrime, 0.0});
}

std::vector<double> intensity_roots(const ReducedParams& rp, const DetuningLaw& law) {
  return roots_for(rp, law);
}

SteadyState steady_amplitude(const ReducedParams& rp, const DetuningLaw& law,
                             BranchSelection branch) {
  auto roots = roots_for(rp, law);
  std::vector<bool> stable(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double dp = law.at(roots[i]);
    stable[i] = stability_check(rp, dp, amplitude(rp.lam, dp - 2.0 * rp.chi * roots[i]));
  }
  const std::size_t k = pick_branch(roots, stable, branch);

  SteadyState ss;
  ss.intensity = roots[k];
  ss.delta_prime = law.at(ss.intensity);
  ss.alpha_s = amplitude(rp.lam, ss.effective_detuning(rp.chi));
  ss.branch_index = k;
  ss.stable = stable[k];
  ss.roots = std::move(roots);
  return ss;
}

SteadyState steady_amplitude(const ReducedParams& rp, double deltaPrime,
                             BranchSelection branch) {
  return steady_amplitude(rp, DetuningLaw{deltaPrime, 0.0}, branch);
}

SteadyState solve_steady_state(const ReducedParams& rp, Model model, XsConvention xs,
                               BranchSelection branch) {
  auto ss = steady_amplitude(rp, detuning_law(rp, model, xs), branch);
  if (model == Model::Full) ss.x_s = mirror_displacement(rp, ss.intensity, xs);
  return ss;
}

bool stability_check(const ReducedParams& rp, double deltaPrime, std::complex<double> alpha_s) {
  const double I = std::norm(alpha_s);
  const cd b = 2.0 * rp.chi * alpha_s * alpha_s;
  const double shifted = deltaPrime - 4.0 * rp.chi * I;
  Eigen::Matrix2cd drift;
  drift << cd(1.0, shifted), cd(0.0, -1.0) * b,
           cd(0.0, 1.0) * std::conj(b), cd(1.0, -shifted);
  const Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(drift, false);
  const auto& ev = solver.eigenvalues();
  return ev(0).real() > 0.0 && ev(1).real() > 0.0;
}

double cubic_residual(const ReducedParams& rp, double deltaPrime, double intensity) {
  return -cubic_value(deltaPrime, 2.0 * rp.chi, rp.lam * rp.lam, intensity);
}

}  // namespace optokerr
