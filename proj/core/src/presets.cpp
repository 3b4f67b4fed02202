#include "optokerr/presets.hpp"

#include <cmath>

#include "optokerr/errors.hpp"

namespace optokerr {

Preset fig2_preset() {
  using constants::kPi;
  constexpr double kappa = 5e5;

  Preset preset;
  preset.name = "fig2";
  auto& p = preset.params;
  p.m = 100e-12;  // 100 ng
  p.kappa = kappa;
  p.Omega = 40.0 * kPi * kappa;
  p.gamma = 0.06 * kappa;
  p.omegaD = 2.0 * kPi * 282e12;
  p.omega0 = p.omegaD;
  p.L = 1e-2;
  p.P = 500e-6;
  p.finesse = 1.9e5;
  preset.drive_wavelength_m = 1064e-9;
  preset.drive_over_kappa_quoted = 3.54e7;
  return preset;
}

std::optional<Preset> find_preset(std::string_view name) {
  if (name == "fig2") return fig2_preset();
  return std::nullopt;
}

double wavelength_mismatch(const Preset& preset) {
  const double from_wavelength =
      2.0 * constants::kPi * constants::kSpeedOfLight / preset.drive_wavelength_m;
  return std::abs(from_wavelength - preset.params.omegaD) / preset.params.omegaD;
}

void self_check(const Preset& preset) {
  preset.params.validate();
  if (!(wavelength_mismatch(preset) <= 1e-3)) {
    throw ParseError("preset '" + preset.name +
                     "': drive wavelength and frequency disagree by more than 0.1%");
  }
}

}  // namespace optokerr
