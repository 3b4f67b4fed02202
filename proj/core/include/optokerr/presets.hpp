#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "optokerr/params.hpp"

namespace optokerr {

/// A named physical parameter set together with the redundant quantities it
/// was published with.
struct Preset {
  std::string name;
  PhysicalParams params;
  double drive_wavelength_m = 0.0;      ///< must agree with params.omegaD
  double drive_over_kappa_quoted = 0.0; ///< informational, not checked
};

/// The 100 ng mirror / 1 cm cavity / 500 uW set used for the detuning scans.
/// omega0 equals omegaD (zero detuning); scans override the detuning.
Preset fig2_preset();

std::optional<Preset> find_preset(std::string_view name);

/// Relative mismatch between omegaD and 2 pi c / wavelength.
double wavelength_mismatch(const Preset& preset);

/// Throws ParseError when the wavelength and drive frequency disagree by more
/// than 0.1 %.
void self_check(const Preset& preset);

}  // namespace optokerr
