#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "optokerr/params.hpp"

namespace optokerr {

using ParamSet = std::variant<PhysicalParams, ReducedParams>;

/// Parses a line-oriented `key = value` parameter file. `#` starts a comment.
///
/// Physical keys: m_kg, omega_m_rad_s, gamma_s, kappa_s, omega0_rad_s,
/// omegaD_rad_s, L_m, P_W and the optional finesse. Reduced keys: delta_k,
/// omega_k, gamma_k, chi_k, lambda_k, g_k. A file must use exactly one of the
/// two key families and give every non-optional key once.
ParamSet parse_param_text(std::string_view text);
ParamSet load_param_file(const std::string& path);

/// Writes the reduced key family, lossless for doubles.
void write_reduced(std::ostream& os, const ReducedParams& rp);

/// ReducedParams for either alternative.
ReducedParams to_reduced(const ParamSet& set);

}  // namespace optokerr
