#pragma once

/// Oscillatory integrals A(t) = int f(E) exp(-i E t) dE.
///
/// The fast engine is a panel-wise Filon rule: on each panel the envelope is
/// expanded in Legendre polynomials from Gauss-Legendre samples, and the
/// expansion is integrated against the kernel exactly through
///   int_{-1}^{1} P_k(x) exp(-i w x) dx = 2 (-i)^k j_k(w).
/// Panels are chosen from the envelope alone, so a prepared FilonPlan serves
/// every t. An inverse-square-root edge at E_lo is integrated in u with
/// E = E_lo + u^2 on a leading panel short enough that the quadratic phase is
/// resolved; beyond it, panels grow geometrically away from the edge.
///
/// The oracle is a plain composite midpoint rule and exists only for
/// validation.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "reldecay/massdist.hpp"

namespace reldecay {

/// Envelope of a Fourier-type integral on [E_lo, E_hi].
///
/// The envelope is addressed by the offset x = E - origin, with the origin
/// placed where the envelope has its finest structure (the threshold edge,
/// or the peak of an untruncated density) so that region keeps full relative
/// precision.
struct FourierIntegrand {
  std::function<double(double)> envelope;
  double E_lo = 0.0;
  double E_hi = 1.0;
  double origin = 0.0;
  /// f ~ (E - E_lo)^{-1/2} near E_lo; requires origin == E_lo.
  bool singular_lo = false;
  /// Offsets (relative to origin) where the envelope has structure.
  std::vector<double> breakpoints;
  /// Lifetime unit tau used for the horizon guard.
  double time_scale = 1.0;
  /// Probability mass removed by truncating the support.
  double truncation_mass = 0.0;

  double width() const noexcept { return E_hi - E_lo; }
  double x_lo() const noexcept { return E_lo - origin; }
  double x_hi() const noexcept { return E_hi - origin; }
  double operator()(double E) const { return envelope(E - origin); }
};

/// Change of variables E = sqrt(m^2 + p^2) applied to omega(m):
///   f(E) = omega(sqrt(E^2 - p^2)) E / sqrt(E^2 - p^2).
/// The support is truncated with effective_support(dist, eps). A negative p
/// is replaced by |p|. Throws PreconditionError for a non-normalized
/// distribution and ParameterError when p > 0 meets a support reaching below
/// m = 0.
FourierIntegrand to_energy_representation(const MassDistribution& dist, double p,
                                          double eps = 1e-10);

struct QuadratureResult {
  std::complex<double> value;
  /// Interpolation error estimate plus truncated probability mass.
  double error_bound = 0.0;
  std::size_t panels = 0;
};

struct FilonOptions {
  /// Gauss-Legendre samples per panel (Legendre degree + 1).
  std::size_t nodes = 32;
  /// Target on each panel's Legendre-tail error estimate.
  double panel_tolerance = 1e-15;
  std::size_t max_panels = 20000;
  /// Upper bound on panel width, mostly for refinement studies.
  double max_panel_width = std::numeric_limits<double>::infinity();
  /// Largest supported t in units of integrand.time_scale.
  double max_time_in_lifetimes = 1e5;
};

/// Panelized envelope ready for repeated evaluation at different t.
///
/// Construction never throws on a missed tolerance; the plan records the
/// failure and every evaluate() call reports it as a ConvergenceError that
/// carries the best estimate.
class FilonPlan {
 public:
  explicit FilonPlan(FourierIntegrand integrand, FilonOptions options = {});

  /// A(t) for t >= 0. Negative t is served by conjugate symmetry.
  /// Throws ConvergenceError beyond the supported horizon or when the plan
  /// missed its tolerance.
  QuadratureResult evaluate(double t) const;

  /// Sum of per-panel interpolation error estimates (t-independent).
  double error_estimate() const noexcept { return interp_error_; }
  std::size_t panel_count() const noexcept { return panels_.size(); }
  bool converged() const noexcept { return converged_; }
  const FourierIntegrand& integrand() const noexcept { return integrand_; }

 private:
  struct Panel {
    double center;  // offset from the integrand origin
    double half;
    double error;
    std::vector<double> coeffs;
  };

  std::complex<double> panel_transform(const Panel& panel, double t) const;
  Panel make_panel(double a, double b) const;
  void build_regular(double a, double b);
  std::complex<double> edge_region(double t, double& error) const;

  FourierIntegrand integrand_;
  FilonOptions options_;
  std::vector<double> gl_nodes_;
  std::vector<double> gl_weights_;
  std::vector<double> transform_;  // nodes x nodes Legendre analysis matrix
  std::vector<Panel> panels_;
  double edge_width_ = 0.0;  // length of the square-root edge region
  double interp_error_ = 0.0;
  bool converged_ = true;
};

/// Builds a FilonPlan and evaluates it once.
QuadratureResult fourier_transform_fast(const FourierIntegrand& integrand, double t,
                                        const FilonOptions& options = {});

/// Smallest n accepted by fourier_transform_oracle: ten points per
/// oscillation of exp(-i E t) across the support.
std::size_t oracle_min_points(const FourierIntegrand& integrand, double t);

/// Composite midpoint rule with n_points uniform panels, in E for regular
/// envelopes and in u = sqrt(E - E_lo) for singular edges. Throws
/// PreconditionError when n_points < oracle_min_points().
QuadratureResult fourier_transform_oracle(const FourierIntegrand& integrand, double t,
                                          std::size_t n_points);

}  // namespace reldecay
