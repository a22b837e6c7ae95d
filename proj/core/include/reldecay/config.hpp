#pragma once

/// Run configuration: a flat key-value document with dotted sections,
///
///   # comment
///   distribution.kind  = breit_wigner
///   distribution.M     = 1.0
///   kinematics.p       = 1.7320508075688772
///   grid.t_max         = 100
///
/// Times are in lifetime units. Lists are comma separated.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reldecay/amplitudes.hpp"
#include "reldecay/analysis.hpp"
#include "reldecay/kinematics.hpp"
#include "reldecay/massdist.hpp"

namespace reldecay {

struct DistributionSpec {
  DistributionKind kind = DistributionKind::BreitWigner;
  double M = 1.0;
  double Gamma = 0.0;  ///< Breit-Wigner width
  double sigma = 0.0;  ///< Gaussian standard deviation
  double mu0 = 0.0;    ///< -inf for an untruncated density
  std::string table;   ///< CSV path for tabulated densities

  /// Builds and normalizes the distribution (loads the table if needed).
  MassDistribution build() const;
};

struct GridSpec {
  double t_max = 10.0;
  std::size_t n_points = 101;
  GridSpacing spacing = GridSpacing::Linear;
  double t_min = 1e-2;  ///< first nonzero point of a log grid
  bool include_zero = true;

  TimeGrid build(double tau) const;
};

struct AnalysisFlags {
  bool compare = true;
  bool transition = false;
  bool scan = false;
};

struct ScanSpec {
  std::vector<double> m;
  std::vector<double> p_par;
  std::vector<double> v;
};

struct RunConfig {
  std::optional<DistributionSpec> distribution;
  /// The normalized distribution built from `distribution` while parsing.
  std::optional<MassDistribution> dist;
  std::optional<double> p;
  std::optional<double> v;
  std::optional<MomentumSmearing> smearing;
  std::vector<PhaseModel> phase_models;
  XRule x_rule;
  std::map<PhaseModel, XRule> x_rule_overrides;
  GridSpec grid;
  AnalysisFlags analyses;
  Window window{0.0, 5.0};
  double transition_threshold = 2.0;
  ScanSpec scan;
  std::string output_dir = "reldecay_out";
  long long seed = 0;
  double eps = 1e-10;
  /// Non-fatal findings such as a violated Gamma << sigma_p << M regime.
  std::vector<std::string> warnings;
  /// Keys exactly as given, in document order, echoed into the manifest.
  std::vector<std::pair<std::string, std::string>> entries;

  bool has_amplitudes() const noexcept { return distribution.has_value(); }
  /// Lorentz factor of the run; needs a distribution for the p form.
  double gamma() const;
  XRule x_rule_for(PhaseModel model) const;
};

/// Throws ConfigError naming unknown keys, malformed values or violated
/// invariants (both p and v, t_max > 1e5, n_points < 2, ...).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

}  // namespace reldecay
