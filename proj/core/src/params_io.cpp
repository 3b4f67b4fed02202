#include "optokerr/params_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "optokerr/errors.hpp"

namespace optokerr {
namespace {

constexpr std::array kPhysicalKeys{"m_kg",         "omega_m_rad_s", "gamma_s",
                                   "kappa_s",      "omega0_rad_s",  "omegaD_rad_s",
                                   "L_m",          "P_W",           "finesse"};
constexpr std::array kReducedKeys{"delta_k", "omega_k",  "gamma_k",
                                  "chi_k",   "lambda_k", "g_k"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <std::size_t N>
bool contains(const std::array<const char*, N>& keys, std::string_view k) {
  for (const char* key : keys) {
    if (k == key) return true;
  }
  return false;
}

double parse_number(std::string_view text, int line) {
  double value = 0.0;
  // from_chars rejects a leading '+'.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line) + ": invalid number '" +
                     std::string(text) + "'");
  }
  return value;
}

double take(std::map<std::string, double>& kv, const char* key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ParseError(std::string("missing key '") + key + "'");
  return it->second;
}

}  // namespace

ParamSet parse_param_text(std::string_view text) {
  std::map<std::string, double> kv;
  bool physical = false;
  bool reduced = false;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = parse_number(trim(line.substr(eq + 1)), line_no);

    if (contains(kPhysicalKeys, key)) {
      physical = true;
    } else if (contains(kReducedKeys, key)) {
      reduced = true;
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!kv.emplace(key, value).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  if (physical && reduced) {
    throw ParseError("physical and reduced keys cannot be mixed in one file");
  }
  if (!physical && !reduced) throw ParseError("parameter file has no entries");

  if (physical) {
    PhysicalParams p;
    p.m = take(kv, "m_kg");
    p.Omega = take(kv, "omega_m_rad_s");
    p.gamma = take(kv, "gamma_s");
    p.kappa = take(kv, "kappa_s");
    p.omega0 = take(kv, "omega0_rad_s");
    p.omegaD = take(kv, "omegaD_rad_s");
    p.L = take(kv, "L_m");
    p.P = take(kv, "P_W");
    if (auto it = kv.find("finesse"); it != kv.end()) p.finesse = it->second;
    p.validate();
    return p;
  }

  ReducedParams rp;
  rp.Delta = take(kv, "delta_k");
  rp.Omega = take(kv, "omega_k");
  rp.gamma = take(kv, "gamma_k");
  rp.chi = take(kv, "chi_k");
  rp.lam = take(kv, "lambda_k");
  rp.g_red = take(kv, "g_k");
  rp.validate();
  return rp;
}

ParamSet load_param_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open parameter file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_param_text(buf.str());
}

void write_reduced(std::ostream& os, const ReducedParams& rp) {
  const auto put = [&os](const char* key, double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 17);
    os << key << " = " << std::string_view(buf.data(), ptr - buf.data()) << '\n';
  };
  put("delta_k", rp.Delta);
  put("omega_k", rp.Omega);
  put("gamma_k", rp.gamma);
  put("chi_k", rp.chi);
  put("lambda_k", rp.lam);
  put("g_k", rp.g_red);
}

ReducedParams to_reduced(const ParamSet& set) {
  if (const auto* p = std::get_if<PhysicalParams>(&set)) return reduce(*p);
  const auto& rp = std::get<ReducedParams>(set);
  rp.validate();
  return rp;
}

}  // namespace optokerr
