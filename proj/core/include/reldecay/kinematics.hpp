#pragma once

/// Energy-momentum relations along a single boost axis.
///
/// Momenta split into a component parallel to the boost and a scalar
/// perpendicular magnitude; the perpendicular part passes through a collinear
/// boost unchanged.

#include <string_view>

namespace reldecay {

/// Reference mass, observer-frame momentum, boost speed and Lorentz factor.
/// gamma is always derived from (M, p) or from v, never set independently.
class Kinematics {
 public:
  /// gamma = sqrt(M^2 + p^2) / M, v = p / sqrt(M^2 + p^2).
  static Kinematics from_momentum(double M, double p);
  /// gamma = 1 / sqrt(1 - v^2), p = M gamma v.
  static Kinematics from_velocity(double M, double v);

  double M() const noexcept { return M_; }
  double p() const noexcept { return p_; }
  double v() const noexcept { return v_; }
  double gamma() const noexcept { return gamma_; }

 private:
  Kinematics(double M, double p, double v, double gamma) : M_(M), p_(p), v_(v), gamma_(gamma) {}
  double M_, p_, v_, gamma_;
};

/// Energy-momentum relation used for the boosted state.
enum class PhaseModel {
  Exact,            ///< full Lorentz transformation
  CarloApprox,      ///< E ~ gamma (m + v p), k ~ gamma (p + v m)
  CorrectedApprox,  ///< E ~ gamma m,         k ~ gamma v m
};

std::string_view to_string(PhaseModel model) noexcept;
/// Accepts "exact", "carlo", "carlo_approx", "corrected", "corrected_approx"
/// (case-insensitive). Throws ParameterError otherwise.
PhaseModel phase_model_from_string(std::string_view name);

/// E_m(p) = sqrt(m^2 + p^2). Throws DomainError for m < 0.
double energy_rest(double m, double p);

/// sqrt(M^2 + p^2) / M. Throws ParameterError for M <= 0.
double gamma_from_p(double M, double p);

/// 1 / sqrt(1 - v^2). Throws DomainError unless 0 <= v < 1.
double gamma_from_v(double v);

/// gamma (E_m(p) + v p_par) with E_m(p) over the full momentum.
double boost_energy_exact(double m, double p_par, double p_perp, double v);

/// gamma (p_par + v E_m(p)). The perpendicular component enters only through
/// the energy.
double boost_momentum_exact(double m, double p_par, double p_perp, double v);
/// Overload for p_perp = 0.
double boost_momentum_exact(double m, double p_par, double v);

double boost_energy_model(PhaseModel model, double m, double p_par, double p_perp, double v);
double boost_momentum_model(PhaseModel model, double m, double p_par, double v);

/// Residuals of the approximation identities at one (m, p_par, v) point.
struct ConsistencyRecord {
  double m;
  double p_par;
  double v;
  /// |gamma (m + v p_par) / m - gamma| = gamma v |p_par| / m
  double r_identity;
  /// |E_exact - gamma (m + v p_par)|
  double r_carlo;
  /// |E_exact - gamma m|
  double r_corrected;
};

/// Throws ParameterError for m <= 0 and DomainError unless 0 <= v < 1.
ConsistencyRecord consistency_residual(double m, double p_par, double v);

}  // namespace reldecay
