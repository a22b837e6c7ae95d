#pragma once

/// Dilation-law comparisons, late-time transition detection and the
/// kinematic consistency scan.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reldecay/amplitudes.hpp"
#include "reldecay/kinematics.hpp"

namespace reldecay {

enum class Verdict { DilatedLaw, ContractedLaw, Neither };

std::string_view to_string(Verdict verdict) noexcept;

/// Ratio the larger deviation must exceed the smaller one by.
inline constexpr double kVerdictSeparation = 5.0;
/// Below this both laws describe the series equally well (e.g. gamma = 1).
inline constexpr double kVerdictFloor = 1e-4;

/// Closest law, provided the other is at least kVerdictSeparation times
/// worse and the worse one is above kVerdictFloor.
Verdict decide_verdict(double dev_dilated, double dev_contracted);

/// Comparison window in lifetime units.
struct Window {
  double t_min = 0.0;
  double t_max = 5.0;
};

struct DeviationReport {
  double gamma = 1.0;
  double horizon = 0.0;  ///< last grid point of the series, in tau
  double dev_dilated = 0.0;
  double dev_contracted = 0.0;
  Window window;
  Verdict verdict = Verdict::Neither;
  std::size_t points = 0;
  std::string label;
};

using RestProvider = std::function<double(double)>;

/// Max |P(t) - P0(t/gamma)| and |P(t) - P0(gamma t)| over series points inside
/// the window. P0 is evaluated directly at the rescaled times.
/// Throws ParameterError for gamma < 1 or a window outside the series grid.
DeviationReport dilation_compare(const AmplitudeSeries& series, const RestProvider& rest_probability,
                                 double gamma, Window window, unsigned threads = 1);

struct RatePoint {
  double t;
  double rate;
};

struct RateResult {
  std::vector<RatePoint> points;
  std::vector<std::string> notes;  ///< one per skipped grid point
};

/// -d ln P / dt by centred differences (one-sided at the ends), using only
/// points with finite P > 0.
RateResult effective_rate(const AmplitudeSeries& series);

struct TransitionReport {
  std::optional<double> t_star;  ///< tau units
  double ratio_at_horizon = 0.0;  ///< may overflow to inf; see the log10 form
  double log10_ratio_at_horizon = 0.0;
  double horizon = 0.0;          ///< tau units
  double threshold = 2.0;
  std::string label;
};

/// Scans t >= tau for the first point where P(t) / (P(tau) exp(-(t - tau)/tau))
/// reaches the threshold. P(tau) comes from the grid, or from log-linear
/// interpolation when tau is not a grid point. Ratios are formed in log space.
/// Throws PreconditionError if the series ends before 100 tau.
TransitionReport transition_time(const AmplitudeSeries& series, double threshold = 2.0);

/// Cartesian product of consistency_residual, sorted by r_identity descending
/// (ties by m, p_par, v ascending). Throws ParameterError on an empty list.
std::vector<ConsistencyRecord> consistency_scan(const std::vector<double>& m_values,
                                                const std::vector<double>& p_par_values,
                                                const std::vector<double>& v_values,
                                                unsigned threads = 1);

}  // namespace reldecay
