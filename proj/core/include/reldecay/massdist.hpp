#pragma once

/// Mass (energy) distributions omega(m) of an unstable state.
///
/// All quantities use natural units (hbar = c = 1). A distribution is built
/// raw through one of the factories and must pass through normalize() before
/// it is handed to the quadrature and amplitude layers.

#include <filesystem>
#include <limits>
#include <vector>

namespace reldecay {

enum class DistributionKind { BreitWigner, Gaussian, Tabulated };

struct TablePoint {
  double m;
  double omega;
};

/// Density omega(m) with threshold mu0; omega(m) = 0 for m < mu0.
///
/// BreitWigner uses the FWHM convention
///   omega(m) = N (Gamma / 2 pi) / ((m - M)^2 + Gamma^2 / 4),
/// Gaussian treats Gamma as the standard deviation, and Tabulated interpolates
/// a (m, omega) table linearly. mu0 = -infinity gives an untruncated density.
class MassDistribution {
 public:
  static MassDistribution breit_wigner(double M, double Gamma, double mu0 = 0.0);
  static MassDistribution gaussian(double M, double sigma, double mu0 = 0.0);
  /// Table rows must be strictly increasing in m with omega >= 0. M is taken
  /// at the density maximum, Gamma as the full width at half maximum, and
  /// mu0 as the first abscissa.
  static MassDistribution tabulated(std::vector<TablePoint> table);

  DistributionKind kind() const noexcept { return kind_; }
  double M() const noexcept { return M_; }
  double Gamma() const noexcept { return Gamma_; }
  double mu0() const noexcept { return mu0_; }
  double norm() const noexcept { return norm_; }
  bool normalized() const noexcept { return normalized_; }
  bool untruncated() const noexcept { return mu0_ == -std::numeric_limits<double>::infinity(); }
  const std::vector<TablePoint>& table() const noexcept { return table_; }

  /// Lifetime unit tau = 1 / Gamma.
  double lifetime() const noexcept { return 1.0 / Gamma_; }

 private:
  friend MassDistribution normalize(MassDistribution dist);

  MassDistribution() = default;

  DistributionKind kind_ = DistributionKind::BreitWigner;
  double M_ = 1.0;
  double Gamma_ = 1.0;
  double mu0_ = 0.0;
  double norm_ = 1.0;
  bool normalized_ = false;
  std::vector<TablePoint> table_;
};

/// Density at m, including the normalization constant. Throws DomainError for
/// non-finite m.
double omega_eval(const MassDistribution& dist, double m);

/// Returns a copy whose density integrates to one over [mu0, inf).
/// Breit-Wigner and Gaussian use closed forms; tables use the trapezoid rule,
/// which is exact for the piecewise-linear interpolant.
MassDistribution normalize(MassDistribution dist);

/// Closed-form (or trapezoid, for tables) probability mass in [a, b].
double probability_mass(const MassDistribution& dist, double a, double b);

struct Support {
  double lo;
  double hi;
};

/// Interval [lo, hi] outside of which less than eps of the probability lies.
///
/// A Breit-Wigner with finite threshold keeps its whole lower region
/// (lo = mu0) and spends the full budget on the upper Lorentzian tail, so the
/// threshold edge is never moved. Untruncated Breit-Wigner and Gaussian
/// densities split eps evenly between the two tails.
Support effective_support(const MassDistribution& dist, double eps);

/// Loads a two-column CSV with header "m,omega" into a raw tabulated density.
MassDistribution load_tabulated_csv(const std::filesystem::path& path);

}  // namespace reldecay
