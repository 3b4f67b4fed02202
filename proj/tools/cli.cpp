#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace optokerr::cli {

namespace {

using json = nlohmann::json;

std::string_view subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::Steady: return "steady";
    case Subcommand::Spectrum: return "spectrum";
    case Subcommand::Scan: return "scan";
    case Subcommand::BoValidate: return "bo-validate";
    case Subcommand::Qnd: return "qnd";
  }
  return "steady";
}

Subcommand parse_subcommand(std::string_view s) {
  for (auto c : {Subcommand::Steady, Subcommand::Spectrum, Subcommand::Scan,
                 Subcommand::BoValidate, Subcommand::Qnd}) {
    if (subcommand_name(c) == s) return c;
  }
  throw UsageError("unknown subcommand '" + std::string(s) + "'");
}

std::string_view source_name(ParamSource s) {
  switch (s) {
    case ParamSource::Flags: return "flags";
    case ParamSource::File: return "file";
    case ParamSource::Preset: return "preset";
  }
  return "flags";
}

ParamSource parse_source(std::string_view s) {
  if (s == "file") return ParamSource::File;
  if (s == "preset") return ParamSource::Preset;
  if (s == "flags") return ParamSource::Flags;
  throw UsageError("unknown parameter source '" + std::string(s) + "'");
}

std::string_view models_name(ScanModels m) {
  switch (m) {
    case ScanModels::BO: return "bo";
    case ScanModels::Full: return "full";
    case ScanModels::Both: return "both";
  }
  return "both";
}

ScanModels parse_models(std::string_view s) {
  if (s == "bo") return ScanModels::BO;
  if (s == "full") return ScanModels::Full;
  if (s == "both") return ScanModels::Both;
  throw UsageError("unknown model '" + std::string(s) + "'");
}

std::string_view xs_name(XsConvention x) {
  switch (x) {
    case XsConvention::Literal: return "literal";
    case XsConvention::ForceBalance: return "force-balance";
    case XsConvention::BoMatched: return "bo-matched";
  }
  return "literal";
}

XsConvention parse_xs(std::string_view s) {
  if (s == "literal") return XsConvention::Literal;
  if (s == "force-balance") return XsConvention::ForceBalance;
  if (s == "bo-matched") return XsConvention::BoMatched;
  throw UsageError("unknown x_s convention '" + std::string(s) + "'");
}

std::string_view policy_name(OmegaBarPolicy p) {
  return p == OmegaBarPolicy::PerPoint ? "per-point" : "fixed";
}

OmegaBarPolicy parse_policy(std::string_view s) {
  if (s == "per-point") return OmegaBarPolicy::PerPoint;
  if (s == "fixed") return OmegaBarPolicy::FixedFromZero;
  throw UsageError("unknown policy '" + std::string(s) + "'");
}

std::string branch_name(const BranchSelection& b) {
  using K = BranchSelection::Kind;
  switch (b.kind) {
    case K::LowestStable: return "lowest-stable";
    case K::Lowest: return "lowest";
    case K::Highest: return "highest";
    case K::RequireUnique: return "unique";
    case K::Index: return std::to_string(b.index);
  }
  return "lowest-stable";
}

BranchSelection parse_branch(const std::string& s) {
  if (s == "lowest-stable") return BranchSelection::lowest_stable();
  if (s == "lowest") return BranchSelection::lowest();
  if (s == "highest") return BranchSelection::highest();
  if (s == "unique") return BranchSelection::require_unique();
  std::size_t k = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("branch must be lowest-stable, lowest, highest, unique or an index");
  }
  return BranchSelection::at(k);
}

std::vector<int> parse_n_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty() || v < 0) {
      throw UsageError("--n-list expects comma-separated nonnegative integers");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--n-list is empty");
  return out;
}

json grid_json(const GridSpec& g) {
  return {{"lo", g.lo}, {"hi", g.hi}, {"points", g.points}, {"log", g.log}};
}

GridSpec grid_from(const json& j) {
  return {j.at("lo").get<double>(), j.at("hi").get<double>(), j.at("points").get<std::size_t>(),
          j.at("log").get<bool>()};
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) {
    bool first = true;
    for (auto h : header) {
      if (!first) text_ += ',';
      text_ += h;
      first = false;
    }
    text_ += '\n';
  }

  Csv& num(double v) {
    sep();
    text_ += format_double(v);
    return *this;
  }
  Csv& integer(long long v) {
    sep();
    text_ += std::to_string(v);
    return *this;
  }
  void end() {
    text_ += '\n';
    fresh_ = true;
  }
  std::string take() { return std::move(text_); }

 private:
  void sep() {
    if (!fresh_) text_ += ',';
    fresh_ = false;
  }

  std::string text_;
  bool fresh_ = true;
};

void validate_config(const RunConfig& c) {
  try {
    c.params.validate();
    if (c.subcommand == Subcommand::Qnd) c.qnd.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  const auto check_grid = [](const GridSpec& g, std::string_view what) {
    if (g.points == 0) throw UsageError(std::string(what) + " grid needs at least one point");
    if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.hi < g.lo) {
      throw UsageError(std::string(what) + " grid needs finite bounds with min <= max");
    }
    if (g.log && g.lo <= 0.0) throw UsageError(std::string(what) + " log grid needs min > 0");
  };
  check_grid(c.deltaGrid, "delta");
  if (c.omegaGrid) {
    check_grid(*c.omegaGrid, "omega");
    if (c.omegaGrid->lo < 0.0) throw UsageError("omega grid must be nonnegative");
  }
  if (c.omegaPoints < 2) throw UsageError("--points must be at least 2");
  if (!(c.mass > 0.0) || !std::isfinite(c.mass)) throw UsageError("--mass must be positive");
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.levels == 0) throw UsageError("--levels must be positive");
  if (c.nlMax < 0) throw UsageError("--nl-max must be nonnegative");
  if (!(c.t >= 0.0) || !std::isfinite(c.t)) throw UsageError("--t must be finite and >= 0");
}

std::string render_steady(const RunConfig& c) {
  const Model model = c.models == ScanModels::Full ? Model::Full : Model::BO;
  Csv csv{"delta", "delta_prime", "root_index", "intensity", "re_alpha", "im_alpha", "stable"};
  for (double delta : c.deltaGrid.values()) {
    auto rp = c.params;
    rp.Delta = delta;
    const auto law = detuning_law(rp, model, c.xs);
    const auto roots = intensity_roots(rp, law);
    for (std::size_t k = 0; k < roots.size(); ++k) {
      const auto ss = steady_amplitude(rp, law, BranchSelection::at(k));
      csv.num(delta).num(ss.delta_prime).integer(static_cast<long long>(k)).num(ss.intensity);
      csv.num(ss.alpha_s.real()).num(ss.alpha_s.imag()).integer(ss.stable ? 1 : 0);
      csv.end();
    }
  }
  return csv.take();
}

std::vector<double> spectrum_omegas(const RunConfig& c) {
  if (c.omegaGrid) return c.omegaGrid->values();
  return default_omega_grid(c.params, c.omegaPoints);
}

std::string render_spectrum(const RunConfig& c) {
  const auto omegas = spectrum_omegas(c);
  const bool bo = c.models != ScanModels::Full;
  const bool full = c.models != ScanModels::BO;
  std::optional<SpectrumCurve> bo_curve;
  std::optional<SpectrumCurve> full_curve;
  const auto compute = [&](Model model) {
    auto curve = compute_spectrum(c.params, model, omegas, c.xs, c.branch);
    if (!curve.steady.stable) {
      throw SingularSpectrum("operating point is unstable; the linearized spectrum does not exist");
    }
    return curve;
  };
  if (bo) bo_curve = compute(Model::BO);
  if (full) full_curve = compute(Model::Full);

  Csv csv = bo && full ? Csv{"omega", "s_bo", "s_full"}
                       : (bo ? Csv{"omega", "s_bo"} : Csv{"omega", "s_full"});
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    csv.num(omegas[i]);
    if (bo) csv.num(bo_curve->values[i]);
    if (full) csv.num(full_curve->values[i]);
    csv.end();
  }
  return csv.take();
}

std::string render_scan(const RunConfig& c) {
  ScanOptions options;
  options.policy = c.policy;
  options.models = c.models;
  options.xs = c.xs;
  options.branch = c.branch;
  options.threads = c.threads;
  if (c.omegaGrid) options.omegaRange = FrequencyRange{c.omegaGrid->lo, c.omegaGrid->hi};
  const auto grid = c.deltaGrid.values();
  const auto rows = detuning_scan(c.params, grid, options);

  const auto point = [](Csv& csv, const ScanPoint& p) {
    csv.num(p.omegaBar).integer(static_cast<long long>(p.branch)).integer(p.stable ? 1 : 0);
  };
  switch (c.models) {
    case ScanModels::Both: {
      Csv csv{"delta_over_omega", "s_bo",  "s_full",         "omega_bar",  "branch",
              "stable",           "omega_bar_full", "branch_full", "stable_full"};
      for (const auto& r : rows) {
        csv.num(r.deltaOverOmega).num(r.bo->s).num(r.full->s);
        point(csv, *r.bo);
        point(csv, *r.full);
        csv.end();
      }
      return csv.take();
    }
    case ScanModels::BO:
    case ScanModels::Full: {
      const bool bo = c.models == ScanModels::BO;
      Csv csv = bo ? Csv{"delta_over_omega", "s_bo", "omega_bar", "branch", "stable"}
                   : Csv{"delta_over_omega", "s_full", "omega_bar", "branch", "stable"};
      for (const auto& r : rows) {
        const auto& p = bo ? *r.bo : *r.full;
        csv.num(r.deltaOverOmega).num(p.s);
        point(csv, p);
        csv.end();
      }
      return csv.take();
    }
  }
  return {};
}

struct BoTable {
  std::string csv;
  bool pass = true;
};

BoTable render_bo_validate(const RunConfig& c) {
  const MirrorModel mirror{c.mass, c.params.Omega, c.params.g_red};
  Csv csv{"N", "n", "V_closed", "V_numeric", "abs_err"};
  bool pass = true;
  for (int N : c.nList) {
    const auto closed = bo_levels(mirror, N, static_cast<int>(c.levels) - 1);
    const auto numeric = numeric_levels(mirror, N, c.levels);
    for (std::size_t n = 0; n < c.levels; ++n) {
      const double err = std::abs(numeric.levels[n] - closed.levels[n]);
      if (err > c.tol * std::abs(closed.levels[n])) pass = false;
      csv.integer(N).integer(static_cast<long long>(n)).num(closed.levels[n]);
      csv.num(numeric.levels[n]).num(err);
      csv.end();
    }
  }
  return {csv.take(), pass};
}

std::string render_qnd(const RunConfig& c) {
  Csv csv{"n_L", "phase", "phase_separation"};
  for (int nl = 0; nl <= c.nlMax; ++nl) {
    const double phase = probe_phase_shift(c.qnd, nl, c.t);
    const double next = probe_phase_shift(c.qnd, nl + 1, c.t);
    csv.integer(nl).num(phase).num(wrap_difference(next, phase));
    csv.end();
  }
  return csv.take();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw UsageError("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw UsageError("failed writing '" + path + "'");
}

// Raw option values shared by every subcommand.
struct RawOptions {
  std::string paramsFile;
  std::string preset;
  double delta = 0.0;
  double mirrorOmega = 40.0 * constants::kPi;
  double gamma = 0.06;
  double chi = 0.0;
  double lambda = 1.0;
  double g = 0.0;
  double mass = 1.0;
  std::string model = "both";
  std::string xs = "literal";
  std::string branch = "lowest-stable";
  std::string policy = "per-point";
  double omegaMin = 0.0;
  double omegaMax = 0.0;
  std::size_t points = 4096;
  bool omegaLog = false;
  double deltaMin = -1.0;
  double deltaMax = 1.0;
  std::size_t deltaPoints = 401;
  std::string nList = "0,1,2,3";
  double tol = 1e-8;
  std::size_t levels = 6;
  double chiL = 0.0;
  double chiR = 0.0;
  double deltaL = 0.0;
  double deltaR = 0.0;
  int nlMax = 5;
  double t = 1.0;
  std::size_t dimL = 0;
  std::size_t dimR = 10;
  int crossSign = 1;
  std::string output;
  std::string manifest;
};

struct Handles {
  std::vector<CLI::Option*> sourceFlags;
  CLI::Option* paramsFile = nullptr;
  CLI::Option* preset = nullptr;
  CLI::Option* delta = nullptr;
  CLI::Option* omegaMin = nullptr;
  CLI::Option* omegaMax = nullptr;
  CLI::Option* deltaMin = nullptr;
  CLI::Option* deltaMax = nullptr;
  CLI::Option* deltaPoints = nullptr;
  CLI::Option* output = nullptr;
  CLI::Option* manifest = nullptr;
  CLI::Option* model = nullptr;
  CLI::Option* dimL = nullptr;
};

void add_param_options(CLI::App* sub, RawOptions& raw, Handles& h, bool with_delta) {
  h.paramsFile = sub->add_option("--params", raw.paramsFile, "Parameter file (key = value)");
  h.preset = sub->add_option("--preset", raw.preset, "Named parameter preset (fig2)");
  if (with_delta) {
    h.delta = sub->add_option("--delta", raw.delta, "Detuning Delta / kappa");
  }
  h.sourceFlags = {
      sub->add_option("--mirror-omega", raw.mirrorOmega, "Mirror frequency Omega / kappa"),
      sub->add_option("--gamma", raw.gamma, "Mirror damping gamma / kappa"),
      sub->add_option("--chi", raw.chi, "Kerr susceptibility chi / kappa"),
      sub->add_option("--lambda", raw.lambda, "Drive amplitude lambda / kappa"),
      sub->add_option("--g", raw.g, "Reduced optomechanical coupling"),
  };
  sub->add_option("--xs-convention", raw.xs, "literal | force-balance | bo-matched")
      ->check(CLI::IsMember({"literal", "force-balance", "bo-matched"}));
  sub->add_option("--branch", raw.branch, "lowest-stable | lowest | highest | unique | <index>");
}

void add_output_options(CLI::App* sub, RawOptions& raw, Handles& h) {
  h.output = sub->add_option("-o,--output", raw.output, "CSV output file (default: stdout)");
  h.manifest = sub->add_option("--manifest", raw.manifest,
                               "Manifest path (default: <output>.manifest.json)");
}

ReducedParams resolve_params(RawOptions& raw, Handles& h, RunConfig& c) {
  bool flags_used = false;
  for (auto* o : h.sourceFlags) flags_used = flags_used || o->count() > 0;
  const int sources = static_cast<int>(h.paramsFile->count() > 0) +
                      static_cast<int>(h.preset->count() > 0) + static_cast<int>(flags_used);
  if (sources > 1) {
    throw UsageError("choose exactly one parameter source: --params, --preset or reduced flags");
  }
  ReducedParams rp;
  try {
    if (h.paramsFile->count() > 0) {
      c.source = ParamSource::File;
      c.paramsFile = raw.paramsFile;
      rp = to_reduced(load_param_file(raw.paramsFile));
    } else if (h.preset->count() > 0) {
      c.source = ParamSource::Preset;
      c.preset = raw.preset;
      const auto preset = find_preset(raw.preset);
      if (!preset) throw UsageError("unknown preset '" + raw.preset + "'");
      self_check(*preset);
      rp = reduce(preset->params);
    } else {
      c.source = ParamSource::Flags;
      rp.Delta = raw.delta;
      rp.Omega = raw.mirrorOmega;
      rp.gamma = raw.gamma;
      rp.chi = raw.chi;
      rp.lam = raw.lambda;
      rp.g_red = raw.g;
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (h.delta != nullptr && h.delta->count() > 0) rp.Delta = raw.delta;
  return rp;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / n;
    out[i] = log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  out.back() = hi;
  return out;
}

std::string format_double(double v) {
  if (!std::isfinite(v)) throw SingularSpectrum("non-finite value in output");
  std::array<char, 40> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return {buf.data(), ptr};
}

unsigned threads_from_env() {
  if (const char* env = std::getenv("OPTOKERR_THREADS")) {
    unsigned n = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Optomechanically induced Kerr cavity: steady states, spectra, BO checks, QND"};
  app.require_subcommand(0, 1);
  RawOptions raw;
  std::string replay;
  auto* replay_opt = app.add_option("--replay", replay, "Re-run the configuration in a manifest");
  auto* replay_out = app.add_option("-o,--output", raw.output, "Output path for --replay");

  auto* steady = app.add_subcommand("steady", "Steady-state roots over a detuning grid");
  auto* spectrum = app.add_subcommand("spectrum", "Intensity spectrum S_I(omega) at one detuning");
  auto* scan = app.add_subcommand("scan", "S_I at the optimal frequency versus Delta / Omega");
  auto* bo = app.add_subcommand("bo-validate", "Closed-form BO levels against diagonalization");
  auto* qnd = app.add_subcommand("qnd", "Probe phase shift per signal photon number");

  Handles hs, hp, hc, hb, hq;
  add_param_options(steady, raw, hs, true);
  hs.model = steady->add_option("--model", raw.model, "bo | full")->check(CLI::IsMember({"bo", "full"}));
  hs.deltaMin = steady->add_option("--delta-min", raw.deltaMin, "Detuning grid start");
  hs.deltaMax = steady->add_option("--delta-max", raw.deltaMax, "Detuning grid end");
  hs.deltaPoints = steady->add_option("--delta-points", raw.deltaPoints, "Detuning grid points");
  add_output_options(steady, raw, hs);

  add_param_options(spectrum, raw, hp, true);
  spectrum->add_option("--model", raw.model, "bo | full | both")
      ->check(CLI::IsMember({"bo", "full", "both"}));
  hp.omegaMin = spectrum->add_option("--omega-min", raw.omegaMin, "Frequency grid start");
  hp.omegaMax = spectrum->add_option("--omega-max", raw.omegaMax, "Frequency grid end");
  spectrum->add_option("--points", raw.points, "Frequency grid points");
  spectrum->add_flag("--log-grid", raw.omegaLog, "Log-spaced frequency grid");
  add_output_options(spectrum, raw, hp);

  add_param_options(scan, raw, hc, false);
  scan->add_option("--model", raw.model, "bo | full | both")
      ->check(CLI::IsMember({"bo", "full", "both"}));
  scan->add_option("--policy", raw.policy, "per-point | fixed")
      ->check(CLI::IsMember({"per-point", "fixed"}));
  scan->add_option("--delta-min", raw.deltaMin, "Delta / Omega grid start");
  scan->add_option("--delta-max", raw.deltaMax, "Delta / Omega grid end");
  scan->add_option("--delta-points", raw.deltaPoints, "Delta / Omega grid points");
  hc.omegaMin = scan->add_option("--omega-min", raw.omegaMin, "Search range start for omega_bar");
  hc.omegaMax = scan->add_option("--omega-max", raw.omegaMax, "Search range end for omega_bar");
  add_output_options(scan, raw, hc);

  add_param_options(bo, raw, hb, false);
  bo->add_option("--mass", raw.mass, "Mirror mass in reduced units");
  bo->add_option("--n-list", raw.nList, "Photon numbers, comma separated");
  bo->add_option("--tol", raw.tol, "Relative tolerance");
  bo->add_option("--levels", raw.levels, "Levels per photon number");
  add_output_options(bo, raw, hb);

  qnd->add_option("--chi-l", raw.chiL, "Signal Kerr coefficient")->required();
  qnd->add_option("--chi-r", raw.chiR, "Probe Kerr coefficient")->required();
  qnd->add_option("--delta-l", raw.deltaL, "Signal detuning");
  qnd->add_option("--delta-r", raw.deltaR, "Probe detuning");
  qnd->add_option("--nl-max", raw.nlMax, "Largest signal photon number");
  qnd->add_option("--t", raw.t, "Interaction time");
  qnd->add_option("--cross-sign", raw.crossSign, "Sign of the cross term (+1 or -1)")
      ->check(CLI::IsMember({-1, 1}));
  hq.dimL = qnd->add_option("--dim-l", raw.dimL, "Signal truncation (default nl-max + 2)");
  qnd->add_option("--dim-r", raw.dimR, "Probe truncation");
  add_output_options(qnd, raw, hq);

  std::vector<std::string> argv_store{"optokerr"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (replay_opt->count() > 0) {
    if (!app.get_subcommands().empty()) throw UsageError("--replay takes no subcommand");
    std::ifstream is(replay);
    if (!is) throw UsageError("cannot read manifest '" + replay + "'");
    std::string line;
    std::getline(is, line);
    RunConfig c;
    try {
      c = from_json(json::parse(line));
    } catch (const json::exception& e) {
      throw UsageError(std::string("malformed manifest: ") + e.what());
    }
    c.output.reset();
    c.manifest.reset();
    if (replay_out->count() > 0) c.output = raw.output;
    c.threads = threads_from_env();
    validate_config(c);
    return c;
  }
  if (replay_out->count() > 0) throw UsageError("-o before a subcommand needs --replay");
  if (app.get_subcommands().empty()) throw UsageError("a subcommand is required (try --help)");

  auto* sub = app.get_subcommands().front();
  RunConfig c;
  c.subcommand = parse_subcommand(sub->get_name());
  c.threads = threads_from_env();
  Handles& active = sub == steady ? hs : sub == spectrum ? hp : sub == scan ? hc : sub == bo ? hb : hq;

  if (c.subcommand != Subcommand::Qnd) {
    c.params = resolve_params(raw, active, c);
    c.xs = parse_xs(raw.xs);
    c.branch = parse_branch(raw.branch);
    c.models = parse_models(raw.model);
  }
  switch (c.subcommand) {
    case Subcommand::Steady: {
      if (hs.model->count() == 0) c.models = ScanModels::BO;
      const bool grid = hs.deltaMin->count() + hs.deltaMax->count() + hs.deltaPoints->count() > 0;
      if (grid && hs.delta->count() > 0) throw UsageError("--delta conflicts with a detuning grid");
      c.deltaGrid = grid ? GridSpec{raw.deltaMin, raw.deltaMax, raw.deltaPoints, false}
                         : GridSpec{c.params.Delta, c.params.Delta, 1, false};
      break;
    }
    case Subcommand::Spectrum: {
      c.omegaPoints = raw.points;
      if (hp.omegaMin->count() + hp.omegaMax->count() > 0 || raw.omegaLog) {
        const auto range = default_omega_range(c.params);
        c.omegaGrid = GridSpec{hp.omegaMin->count() > 0 ? raw.omegaMin : range.lo,
                               hp.omegaMax->count() > 0 ? raw.omegaMax : range.hi, raw.points,
                               raw.omegaLog};
      }
      break;
    }
    case Subcommand::Scan: {
      c.policy = parse_policy(raw.policy);
      c.deltaGrid = GridSpec{raw.deltaMin, raw.deltaMax, raw.deltaPoints, false};
      if (hc.omegaMin->count() + hc.omegaMax->count() > 0) {
        const auto range = default_omega_range(c.params);
        c.omegaGrid = GridSpec{hc.omegaMin->count() > 0 ? raw.omegaMin : range.lo,
                               hc.omegaMax->count() > 0 ? raw.omegaMax : range.hi, 2, false};
      }
      break;
    }
    case Subcommand::BoValidate: {
      c.mass = raw.mass;
      c.nList = parse_n_list(raw.nList);
      c.tol = raw.tol;
      c.levels = raw.levels;
      break;
    }
    case Subcommand::Qnd: {
      c.qnd.chiL = raw.chiL;
      c.qnd.chiR = raw.chiR;
      c.qnd.deltaL = raw.deltaL;
      c.qnd.deltaR = raw.deltaR;
      c.qnd.crossSign = raw.crossSign;
      c.qnd.dimR = raw.dimR;
      c.nlMax = raw.nlMax;
      if (c.nlMax < 0) throw UsageError("--nl-max must be nonnegative");
      c.qnd.dimL = hq.dimL->count() > 0 ? raw.dimL : static_cast<std::size_t>(c.nlMax) + 2;
      c.t = raw.t;
      break;
    }
  }
  if (active.output->count() > 0) c.output = raw.output;
  if (active.manifest->count() > 0) c.manifest = raw.manifest;
  validate_config(c);
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["tool"] = "optokerr";
  j["version"] = "0.1.0";
  j["subcommand"] = subcommand_name(c.subcommand);
  j["source"] = source_name(c.source);
  if (c.preset) j["preset"] = *c.preset;
  if (c.paramsFile) j["params_file"] = *c.paramsFile;
  j["reduced"] = {{"delta_k", c.params.Delta}, {"omega_k", c.params.Omega},
                  {"gamma_k", c.params.gamma}, {"chi_k", c.params.chi},
                  {"lambda_k", c.params.lam},  {"g_k", c.params.g_red}};
  j["mass"] = c.mass;
  j["model"] = models_name(c.models);
  j["xs_convention"] = xs_name(c.xs);
  j["branch"] = branch_name(c.branch);
  j["policy"] = policy_name(c.policy);
  if (c.omegaGrid) j["omega_grid"] = grid_json(*c.omegaGrid);
  j["omega_points"] = c.omegaPoints;
  j["delta_grid"] = grid_json(c.deltaGrid);
  j["n_list"] = c.nList;
  j["levels"] = c.levels;
  j["tol"] = c.tol;
  json q = {{"chi_l", c.qnd.chiL},     {"chi_r", c.qnd.chiR}, {"delta_l", c.qnd.deltaL},
            {"delta_r", c.qnd.deltaR}, {"dim_l", c.qnd.dimL}, {"dim_r", c.qnd.dimR},
            {"cross_sign", c.qnd.crossSign}};
  if (c.qnd.chiCross) q["chi_cross"] = *c.qnd.chiCross;
  if (c.qnd.chi) q["chi"] = *c.qnd.chi;
  j["qnd"] = q;
  j["nl_max"] = c.nlMax;
  j["t"] = c.t;
  if (c.output) j["output"] = *c.output;
  return j;
}

RunConfig from_json(const json& j) {
  RunConfig c;
  c.subcommand = parse_subcommand(j.at("subcommand").get<std::string>());
  c.source = parse_source(j.at("source").get<std::string>());
  if (j.contains("preset")) c.preset = j.at("preset").get<std::string>();
  if (j.contains("params_file")) c.paramsFile = j.at("params_file").get<std::string>();
  const auto& r = j.at("reduced");
  c.params.Delta = r.at("delta_k").get<double>();
  c.params.Omega = r.at("omega_k").get<double>();
  c.params.gamma = r.at("gamma_k").get<double>();
  c.params.chi = r.at("chi_k").get<double>();
  c.params.lam = r.at("lambda_k").get<double>();
  c.params.g_red = r.at("g_k").get<double>();
  c.mass = j.at("mass").get<double>();
  c.models = parse_models(j.at("model").get<std::string>());
  c.xs = parse_xs(j.at("xs_convention").get<std::string>());
  c.branch = parse_branch(j.at("branch").get<std::string>());
  c.policy = parse_policy(j.at("policy").get<std::string>());
  if (j.contains("omega_grid")) c.omegaGrid = grid_from(j.at("omega_grid"));
  c.omegaPoints = j.at("omega_points").get<std::size_t>();
  c.deltaGrid = grid_from(j.at("delta_grid"));
  c.nList = j.at("n_list").get<std::vector<int>>();
  c.levels = j.at("levels").get<std::size_t>();
  c.tol = j.at("tol").get<double>();
  const auto& q = j.at("qnd");
  c.qnd.chiL = q.at("chi_l").get<double>();
  c.qnd.chiR = q.at("chi_r").get<double>();
  c.qnd.deltaL = q.at("delta_l").get<double>();
  c.qnd.deltaR = q.at("delta_r").get<double>();
  c.qnd.dimL = q.at("dim_l").get<std::size_t>();
  c.qnd.dimR = q.at("dim_r").get<std::size_t>();
  c.qnd.crossSign = q.at("cross_sign").get<int>();
  if (q.contains("chi_cross")) c.qnd.chiCross = q.at("chi_cross").get<double>();
  if (q.contains("chi")) c.qnd.chi = q.at("chi").get<double>();
  c.nlMax = j.at("nl_max").get<int>();
  c.t = j.at("t").get<double>();
  if (j.contains("output")) c.output = j.at("output").get<std::string>();
  return c;
}

std::optional<std::string> manifest_path(const RunConfig& c) {
  if (c.manifest) return c.manifest;
  if (c.output) return *c.output + ".manifest.json";
  return std::nullopt;
}

std::string render(const RunConfig& c) {
  switch (c.subcommand) {
    case Subcommand::Steady: return render_steady(c);
    case Subcommand::Spectrum: return render_spectrum(c);
    case Subcommand::Scan: return render_scan(c);
    case Subcommand::BoValidate: return render_bo_validate(c).csv;
    case Subcommand::Qnd: return render_qnd(c);
  }
  return {};
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate_config(c);
    std::string body;
    bool pass = true;
    if (c.subcommand == Subcommand::BoValidate) {
      auto table = render_bo_validate(c);
      body = std::move(table.csv);
      pass = table.pass;
    } else {
      body = render(c);
    }
    if (const auto path = manifest_path(c)) write_file(*path, to_json(c).dump() + "\n");
    if (c.output) {
      write_file(*c.output, body);
    } else {
      out << body;
    }
    if (!pass) {
      err << "optokerr: bo-validate: closed-form levels miss the tolerance " << c.tol << '\n';
      return 1;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "optokerr: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "optokerr: numerical failure: " << e.what() << '\n';
    return 1;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(args, out);
  } catch (const UsageError& e) {
    err << "optokerr: " << e.what() << '\n';
    return 2;
  }
  if (!config) return 0;
  return run(*config, out, err);
}

}  // namespace optokerr::cli
