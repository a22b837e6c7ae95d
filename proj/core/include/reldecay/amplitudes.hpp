#pragma once

/// Survival amplitudes of an unstable state at rest, with definite momentum,
/// and in a frame moving with velocity v, assembled into time series.

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "reldecay/kinematics.hpp"
#include "reldecay/massdist.hpp"
#include "reldecay/quadrature.hpp"

namespace reldecay {

enum class GridSpacing { Linear, Log };

/// Evaluation times, stored in absolute units together with the lifetime
/// unit tau.
struct TimeGrid {
  double tau = 1.0;
  std::vector<double> points;
  GridSpacing spacing = GridSpacing::Linear;

  /// n points uniformly on [0, t_max_tau * tau].
  static TimeGrid linear(double tau, double t_max_tau, std::size_t n);
  /// n points geometrically on [t_min_tau, t_max_tau] (times tau), with an
  /// optional leading t = 0.
  static TimeGrid log(double tau, double t_min_tau, double t_max_tau, std::size_t n,
                      bool include_zero = false);
  static TimeGrid from_points(double tau, std::vector<double> points,
                              GridSpacing spacing = GridSpacing::Linear);

  /// Throws ParameterError unless points are finite, nonnegative, strictly
  /// increasing and at most 1e5 tau.
  void validate() const;
  std::size_t size() const noexcept { return points.size(); }
};

/// Gaussian momentum smearing along the boost axis: |phi(p)|^2 is a normal
/// density with mean p_bar and standard deviation sigma_p.
struct MomentumSmearing {
  double p_bar = 0.0;
  double sigma_p = 0.0;

  void validate() const;
  double density(double p) const;
};

/// Operational form of Gamma << sigma_p << M: factor-of-ten separations.
struct RegimeCheck {
  bool width_below_spread;  ///< Gamma <= sigma_p / 10
  bool spread_below_mass;   ///< sigma_p <= M / 10
  bool satisfied() const noexcept { return width_below_spread && spread_below_mass; }
  /// Empty when satisfied, otherwise names the failing inequality.
  std::string message(double Gamma, double sigma_p, double M) const;
};

RegimeCheck check_regime(double Gamma, double sigma_p, double M);

/// Position at which A_v(t; x) is evaluated.
struct XRule {
  enum class Kind { Comoving, Fixed };
  Kind kind = Kind::Comoving;
  double x = 0.0;

  static XRule comoving() { return {Kind::Comoving, 0.0}; }
  static XRule fixed(double x) { return {Kind::Fixed, x}; }
  double position(double v, double t) const { return kind == Kind::Comoving ? v * t : x; }
  std::string describe() const;
};

/// Per-point amplitudes, probabilities P = |A|^2 and probability error
/// bounds. Points whose quadrature did not converge keep the best estimate
/// and carry a note; points that failed outright hold NaN.
struct AmplitudeSeries {
  TimeGrid grid;
  std::vector<std::complex<double>> amplitudes;
  std::vector<double> probabilities;
  std::vector<double> error_bounds;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
  std::string label;

  std::size_t size() const noexcept { return amplitudes.size(); }
  std::size_t failed_points() const;
  bool wholly_failed() const { return size() > 0 && failed_points() == size(); }
};

enum class Engine { Fast, Oracle };

struct EvaluationOptions {
  /// Tail mass dropped when truncating the mass support.
  double eps = 1e-10;
  Engine engine = Engine::Fast;
  unsigned threads = 1;
  FilonOptions filon;
  /// Oracle sample count: max(floor, per_oscillation_factor * minimum).
  std::size_t oracle_floor = 200000;
  double oracle_factor = 4.0;
  std::size_t oracle_cap = 400000000;
};

/// Single amplitude at a point, with its error bound and an optional note.
struct PointValue {
  std::complex<double> amplitude;
  double error_bound = 0.0;
  std::string note;
  bool failed = false;
};

/// Definite-momentum survival amplitude A_p(t) = int omega(m)
/// exp(-i t sqrt(m^2 + p^2)) dm, prepared once and evaluable at any t.
/// Also serves as the P_0(t) provider for rescaled-time comparisons.
class MomentumAmplitude {
 public:
  MomentumAmplitude(const MassDistribution& dist, double p, const EvaluationOptions& options = {});

  PointValue evaluate(double t) const;
  double probability(double t) const { return std::norm(evaluate(t).amplitude); }
  double momentum() const noexcept { return p_; }

 private:
  double p_;
  EvaluationOptions options_;
  std::shared_ptr<const FourierIntegrand> integrand_;
  std::shared_ptr<const FilonPlan> plan_;  // null for the oracle engine
};

/// A_0(t) = int omega(m) exp(-i m t) dm.
AmplitudeSeries survival_rest(const MassDistribution& dist, const TimeGrid& grid,
                              const EvaluationOptions& options = {});

/// A_p(t) for definite momentum p >= 0; p = 0 runs the survival_rest path.
AmplitudeSeries survival_momentum(const MassDistribution& dist, double p, const TimeGrid& grid,
                                  const EvaluationOptions& options = {});

/// A_v(t; x) = int dm omega(m) int dp |phi(p)|^2 exp(-i E t + i k x) with
/// (E, k) the boosted energy and momentum under `model`.
///
/// Every model gives E t - k x = gamma (t - v x) e(m, p) + gamma p (v t - x)
/// with e = sqrt(m^2 + p^2) (Exact), e = m (approximations, where the p term
/// is absent for CorrectedApprox). The mass integral therefore reduces to
/// A_{|p|} or A_0 at t' = gamma (t - v x); the momentum integral is a
/// Gauss-Hermite rule over |phi|^2, starting at 64 nodes and doubled until two
/// successive results agree to 1e-8.
AmplitudeSeries survival_velocity_frame(const MassDistribution& dist,
                                        const MomentumSmearing& smear, double v, XRule x_rule,
                                        PhaseModel model, const TimeGrid& grid,
                                        const EvaluationOptions& options = {});

/// Probability error bound for |A|^2 given an amplitude bound.
double probability_bound(std::complex<double> amplitude, double amplitude_bound);

}  // namespace reldecay
