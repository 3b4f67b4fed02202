#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "optokerr/optokerr.hpp"

namespace optokerr::cli {

enum class Subcommand { Steady, Spectrum, Scan, BoValidate, Qnd };

enum class ParamSource { Flags, File, Preset };

/// Invalid command line or configuration; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 1;
  bool log = false;

  std::vector<double> values() const;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::Steady;
  ParamSource source = ParamSource::Flags;
  std::optional<std::string> preset;
  std::optional<std::string> paramsFile;
  ReducedParams params;  ///< resolved reduced parameters
  double mass = 1.0;     ///< mirror mass for bo-validate, reduced units

  ScanModels models = ScanModels::Both;
  XsConvention xs = XsConvention::Literal;
  BranchSelection branch = BranchSelection::lowest_stable();
  OmegaBarPolicy policy = OmegaBarPolicy::PerPoint;

  /// spectrum: omega grid, default_omega_grid when empty.
  std::optional<GridSpec> omegaGrid;
  std::size_t omegaPoints = 4096;
  /// steady: Delta grid; scan: Delta / Omega grid.
  GridSpec deltaGrid{0.0, 0.0, 1, false};

  std::vector<int> nList{0, 1, 2, 3};
  std::size_t levels = 6;
  double tol = 1e-8;

  QndParams qnd;
  int nlMax = 5;
  double t = 1.0;

  std::optional<std::string> output;
  std::optional<std::string> manifest;
  unsigned threads = 1;
};

/// Parses argv (without the program name). Returns nullopt after printing
/// help. Throws UsageError.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

nlohmann::json to_json(const RunConfig& config);
RunConfig from_json(const nlohmann::json& j);

/// Default sidecar path: <output>.manifest.json, or the --manifest path.
std::optional<std::string> manifest_path(const RunConfig& config);

/// Computes the CSV body. Throws optokerr::Error on numerical failure and
/// UsageError for bad configurations.
std::string render(const RunConfig& config);

/// Executes the run: writes the manifest (when a path is known) and the CSV.
/// Returns 0, 1 (numerical failure or failed validation) or 2 (usage).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, with exit codes.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread count from OPTOKERR_THREADS, else hardware concurrency.
unsigned threads_from_env();

/// Shortest text of 17 significant digits; throws on NaN or Inf.
std::string format_double(double v);

}  // namespace optokerr::cli
