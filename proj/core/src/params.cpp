#include "optokerr/params.hpp"

#include <cmath>
#include <string>

#include "optokerr/errors.hpp"

namespace optokerr {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void PhysicalParams::validate() const {
  require(positive(m), "mirror mass must be positive");
  require(positive(Omega), "mirror frequency must be positive");
  require(nonnegative(gamma), "mirror damping must be nonnegative");
  require(positive(kappa), "cavity decay rate must be positive");
  require(positive(omega0), "cavity frequency must be positive");
  require(positive(omegaD), "drive frequency must be positive");
  require(positive(L), "cavity length must be positive");
  require(nonnegative(P), "drive power must be nonnegative");
  if (finesse) require(positive(*finesse), "finesse must be positive");
}

void ReducedParams::validate() const {
  require(std::isfinite(Delta), "detuning must be finite");
  require(positive(Omega), "reduced mirror frequency must be positive");
  require(nonnegative(gamma), "reduced damping must be nonnegative");
  require(nonnegative(chi), "reduced chi must be nonnegative");
  require(nonnegative(lam), "reduced lambda must be nonnegative");
  require(std::isfinite(g_red), "reduced coupling must be finite");
}

double derive_g(const PhysicalParams& p) {
  require(positive(p.L), "cavity length must be positive");
  require(std::isfinite(p.omega0), "cavity frequency must be finite");
  return p.omega0 / p.L;
}

double derive_chi(const PhysicalParams& p) {
  require(positive(p.m), "mirror mass must be positive");
  require(positive(p.Omega), "mirror frequency must be positive");
  const double g = derive_g(p);
  return constants::kHbar * g * g / (2.0 * p.m * p.Omega * p.Omega);
}

double derive_lambda(const PhysicalParams& p) {
  require(nonnegative(p.P), "drive power must be nonnegative");
  require(positive(p.omegaD), "drive frequency must be positive");
  require(positive(p.kappa), "cavity decay rate must be positive");
  return std::sqrt(2.0 * p.P * p.kappa / (constants::kHbar * p.omegaD));
}

double reduced_length_unit(const PhysicalParams& p) {
  require(positive(p.m), "mirror mass must be positive");
  require(positive(p.kappa), "cavity decay rate must be positive");
  return std::sqrt(constants::kHbar / (p.m * p.kappa));
}

ReducedParams reduce(const PhysicalParams& p) {
  p.validate();
  ReducedParams rp;
  rp.Delta = (p.omega0 - p.omegaD) / p.kappa;
  rp.Omega = p.Omega / p.kappa;
  rp.gamma = p.gamma / p.kappa;
  rp.chi = derive_chi(p) / p.kappa;
  rp.lam = derive_lambda(p) / p.kappa;
  rp.g_red = derive_g(p) * reduced_length_unit(p) / p.kappa;
  return rp;
}

PhysicalRates rescale(const ReducedParams& rp, double kappa) {
  require(positive(kappa), "cavity decay rate must be positive");
  return {rp.Delta * kappa, rp.Omega * kappa, rp.gamma * kappa, rp.chi * kappa,
          rp.lam * kappa};
}

double physical_coupling(double g_red, double kappa, double m) {
  require(positive(kappa), "cavity decay rate must be positive");
  require(positive(m), "mirror mass must be positive");
  return g_red * kappa / std::sqrt(constants::kHbar / (m * kappa));
}

bool bo_condition_holds(const ReducedParams& rp, double ratio) {
  return rp.Omega >= ratio * std::abs(rp.Delta);
}

}  // namespace optokerr
