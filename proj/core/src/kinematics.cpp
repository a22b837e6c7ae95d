#include "reldecay/kinematics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "reldecay/error.hpp"

namespace reldecay {
namespace {

void check_speed(double v) {
  if (!(v >= 0.0 && v < 1.0)) {
    throw DomainError("boost speed must satisfy 0 <= v < 1 (got " + std::to_string(v) + ")");
  }
}

void check_mass(double m) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("mass must be finite and nonnegative");
}

}  // namespace

Kinematics Kinematics::from_momentum(double M, double p) {
  const double gamma = gamma_from_p(M, p);
  const double E = std::hypot(M, p);
  return Kinematics(M, p, std::abs(p) / E, gamma);
}

Kinematics Kinematics::from_velocity(double M, double v) {
  if (!(M > 0.0) || !std::isfinite(M)) throw ParameterError("M must be positive");
  const double gamma = gamma_from_v(v);
  return Kinematics(M, M * gamma * v, v, gamma);
}

std::string_view to_string(PhaseModel model) noexcept {
  switch (model) {
    case PhaseModel::Exact: return "exact";
    case PhaseModel::CarloApprox: return "carlo";
    case PhaseModel::CorrectedApprox: return "corrected";
  }
  return "unknown";
}

PhaseModel phase_model_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "exact") return PhaseModel::Exact;
  if (s == "carlo" || s == "carlo_approx" || s == "carloapprox") return PhaseModel::CarloApprox;
  if (s == "corrected" || s == "corrected_approx" || s == "correctedapprox") {
    return PhaseModel::CorrectedApprox;
  }
  throw ParameterError("unknown phase model '" + std::string(name) + "'");
}

double energy_rest(double m, double p) {
  check_mass(m);
  return std::hypot(m, p);
}

double gamma_from_p(double M, double p) {
  if (!(M > 0.0) || !std::isfinite(M)) throw ParameterError("gamma_from_p: M must be positive");
  return std::hypot(M, p) / M;
}

double gamma_from_v(double v) {
  check_speed(v);
  // (1 - v)(1 + v) keeps precision as v -> 1.
  return 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
}

double boost_energy_exact(double m, double p_par, double p_perp, double v) {
  check_mass(m);
  const double gamma = gamma_from_v(v);
  const double E = std::sqrt(m * m + p_par * p_par + p_perp * p_perp);
  return gamma * (E + v * p_par);
}

double boost_momentum_exact(double m, double p_par, double p_perp, double v) {
  check_mass(m);
  const double gamma = gamma_from_v(v);
  const double E = std::sqrt(m * m + p_par * p_par + p_perp * p_perp);
  return gamma * (p_par + v * E);
}

double boost_momentum_exact(double m, double p_par, double v) {
  return boost_momentum_exact(m, p_par, 0.0, v);
}

double boost_energy_model(PhaseModel model, double m, double p_par, double p_perp, double v) {
  switch (model) {
    case PhaseModel::Exact:
      return boost_energy_exact(m, p_par, p_perp, v);
    case PhaseModel::CarloApprox:
      check_mass(m);
      return gamma_from_v(v) * (m + v * p_par);
    case PhaseModel::CorrectedApprox:
      check_mass(m);
      return gamma_from_v(v) * m;
  }
  return 0.0;
}

double boost_momentum_model(PhaseModel model, double m, double p_par, double v) {
  switch (model) {
    case PhaseModel::Exact:
      return boost_momentum_exact(m, p_par, v);
    case PhaseModel::CarloApprox:
      check_mass(m);
      return gamma_from_v(v) * (p_par + v * m);
    case PhaseModel::CorrectedApprox:
      check_mass(m);
      return gamma_from_v(v) * v * m;
  }
  return 0.0;
}

ConsistencyRecord consistency_residual(double m, double p_par, double v) {
  if (!(m > 0.0) || !std::isfinite(m)) throw ParameterError("consistency_residual: m must be positive");
  check_speed(v);
  const double gamma = gamma_from_v(v);
  const double exact = boost_energy_exact(m, p_par, 0.0, v);
  const double carlo = gamma * (m + v * p_par);
  const double corrected = gamma * m;
  ConsistencyRecord rec;
  rec.m = m;
  rec.p_par = p_par;
  rec.v = v;
  // gamma (m + v p)/m - gamma reduces to gamma v p / m; evaluated in reduced
  // form so the residual is exactly zero on the v = 0 and p = 0 slices.
  rec.r_identity = gamma * v * std::abs(p_par) / m;
  rec.r_carlo = std::abs(exact - carlo);
  rec.r_corrected = std::abs(exact - corrected);
  return rec;
}

}  // namespace reldecay
