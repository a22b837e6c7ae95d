#include "reldecay/amplitudes.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "reldecay/error.hpp"
#include "reldecay/parallel.hpp"
#include "reldecay/special.hpp"

namespace reldecay {
namespace {

using cplx = std::complex<double>;

constexpr double kMaxLifetimes = 1e5;
constexpr std::size_t kFirstHermite = 64;
constexpr std::size_t kMaxHermite = 1024;
constexpr double kHermiteAgreement = 1e-8;

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

AmplitudeSeries assemble(const TimeGrid& grid, std::string label, unsigned threads,
                         const std::function<PointValue(double)>& point) {
  grid.validate();
  AmplitudeSeries series;
  series.grid = grid;
  series.label = std::move(label);
  const std::size_t n = grid.size();
  series.amplitudes.assign(n, cplx(0.0, 0.0));
  series.probabilities.assign(n, 0.0);
  series.error_bounds.assign(n, 0.0);
  series.notes.assign(n, std::string());
  parallel_for(n, threads, [&](std::size_t i) {
    const PointValue v = point(grid.points[i]);
    series.amplitudes[i] = v.amplitude;
    series.probabilities[i] = std::norm(v.amplitude);
    series.error_bounds[i] = v.failed ? std::numeric_limits<double>::infinity()
                                      : probability_bound(v.amplitude, v.error_bound);
    series.notes[i] = v.note;
    if (v.failed && series.notes[i].empty()) series.notes[i] = "failed";
  });
  return series;
}

// Gauss-Hermite rules for 64, 128, ... kMaxHermite nodes, built once.
const std::vector<special::QuadratureRule>& hermite_rules() {
  static const std::vector<special::QuadratureRule> rules = [] {
    std::vector<special::QuadratureRule> r;
    for (std::size_t n = kFirstHermite; n <= kMaxHermite; n *= 2) r.push_back(special::gauss_hermite(n));
    return r;
  }();
  return rules;
}

}  // namespace

TimeGrid TimeGrid::linear(double tau, double t_max_tau, std::size_t n) {
  if (n < 2) throw ParameterError("time grid needs at least two points");
  if (!(t_max_tau > 0.0)) throw ParameterError("time grid t_max must be positive");
  TimeGrid g;
  g.tau = tau;
  g.spacing = GridSpacing::Linear;
  g.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.points[i] = tau * t_max_tau * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.validate();
  return g;
}

TimeGrid TimeGrid::log(double tau, double t_min_tau, double t_max_tau, std::size_t n,
                       bool include_zero) {
  if (n < 2) throw ParameterError("time grid needs at least two points");
  if (!(t_min_tau > 0.0 && t_max_tau > t_min_tau)) {
    throw ParameterError("log time grid needs 0 < t_min < t_max");
  }
  TimeGrid g;
  g.tau = tau;
  g.spacing = GridSpacing::Log;
  if (include_zero) g.points.push_back(0.0);
  const double ratio = std::log(t_max_tau / t_min_tau);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    g.points.push_back(tau * t_min_tau * std::exp(ratio * f));
  }
  g.points.back() = tau * t_max_tau;
  g.validate();
  return g;
}

TimeGrid TimeGrid::from_points(double tau, std::vector<double> points, GridSpacing spacing) {
  TimeGrid g;
  g.tau = tau;
  g.points = std::move(points);
  g.spacing = spacing;
  g.validate();
  return g;
}

void TimeGrid::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("time grid tau must be positive");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double t = points[i];
    if (!std::isfinite(t) || t < 0.0) throw ParameterError("time grid points must be finite and >= 0");
    if (i > 0 && !(t > points[i - 1])) throw ParameterError("time grid must be strictly increasing");
    if (t > kMaxLifetimes * tau * (1.0 + 1e-12)) {
      throw ParameterError("time grid exceeds 1e5 lifetimes");
    }
  }
}

void MomentumSmearing::validate() const {
  if (!std::isfinite(p_bar)) throw ParameterError("smearing p_bar must be finite");
  if (!(sigma_p > 0.0) || !std::isfinite(sigma_p)) {
    throw ParameterError("smearing sigma_p must be positive");
  }
}

double MomentumSmearing::density(double p) const {
  const double z = (p - p_bar) / sigma_p;
  return std::exp(-0.5 * z * z) / (sigma_p * std::sqrt(2.0 * std::numbers::pi));
}

RegimeCheck check_regime(double Gamma, double sigma_p, double M) {
  return {Gamma <= sigma_p / 10.0, sigma_p <= M / 10.0};
}

std::string RegimeCheck::message(double Gamma, double sigma_p, double M) const {
  if (satisfied()) return {};
  std::ostringstream os;
  os << "regime Gamma << sigma_p << M not met:";
  if (!width_below_spread) {
    os << " Gamma <= sigma_p/10 violated (Gamma=" << Gamma << ", sigma_p=" << sigma_p << ")";
  }
  if (!spread_below_mass) {
    os << " sigma_p <= M/10 violated (sigma_p=" << sigma_p << ", M=" << M << ")";
  }
  return os.str();
}

std::string XRule::describe() const {
  return kind == Kind::Comoving ? std::string("comoving") : "fixed(" + format_number(x) + ")";
}

std::size_t AmplitudeSeries::failed_points() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!std::isfinite(amplitudes[i].real()) || !std::isfinite(amplitudes[i].imag())) ++n;
  }
  return n;
}

double probability_bound(cplx amplitude, double amplitude_bound) {
  return 2.0 * std::abs(amplitude) * amplitude_bound + amplitude_bound * amplitude_bound;
}

MomentumAmplitude::MomentumAmplitude(const MassDistribution& dist, double p,
                                     const EvaluationOptions& options)
    : p_(std::abs(p)), options_(options) {
  integrand_ = std::make_shared<const FourierIntegrand>(
      to_energy_representation(dist, p_, options.eps));
  if (options.engine == Engine::Fast) {
    plan_ = std::make_shared<const FilonPlan>(*integrand_, options.filon);
  }
}

PointValue MomentumAmplitude::evaluate(double t) const {
  PointValue out;
  if (options_.engine == Engine::Fast) {
    try {
      const QuadratureResult r = plan_->evaluate(t);
      out.amplitude = r.value;
      out.error_bound = r.error_bound;
    } catch (const ConvergenceError& e) {
      out.amplitude = e.estimate();
      out.error_bound = e.error_bound();
      out.note = e.what();
      out.failed = !std::isfinite(e.estimate().real());
    }
    return out;
  }

  const FourierIntegrand& integrand = *integrand_;
  const double at = std::abs(t);
  const std::size_t need = oracle_min_points(integrand, at);
  const double want = std::max(static_cast<double>(options_.oracle_floor),
                               options_.oracle_factor * static_cast<double>(need));
  if (want > static_cast<double>(options_.oracle_cap)) {
    out.amplitude = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    out.error_bound = std::numeric_limits<double>::infinity();
    out.note = "oracle would need " + format_number(want) + " points";
    out.failed = true;
    return out;
  }
  const QuadratureResult r =
      fourier_transform_oracle(integrand, at, static_cast<std::size_t>(want));
  out.amplitude = t < 0.0 ? std::conj(r.value) : r.value;
  out.error_bound = r.error_bound;
  return out;
}

AmplitudeSeries survival_momentum(const MassDistribution& dist, double p, const TimeGrid& grid,
                                  const EvaluationOptions& options) {
  if (!std::isfinite(p) || p < 0.0) throw DomainError("survival_momentum: p must be >= 0");
  const MomentumAmplitude amp(dist, p, options);
  std::string label = p == 0.0 ? "rest" : "momentum p=" + format_number(p);
  return assemble(grid, std::move(label), options.threads,
                  [&](double t) { return amp.evaluate(t); });
}

AmplitudeSeries survival_rest(const MassDistribution& dist, const TimeGrid& grid,
                              const EvaluationOptions& options) {
  return survival_momentum(dist, 0.0, grid, options);
}

AmplitudeSeries survival_velocity_frame(const MassDistribution& dist,
                                        const MomentumSmearing& smear, double v, XRule x_rule,
                                        PhaseModel model, const TimeGrid& grid,
                                        const EvaluationOptions& options) {
  const double gamma = gamma_from_v(v);
  smear.validate();
  if (x_rule.kind == XRule::Kind::Fixed && !std::isfinite(x_rule.x)) {
    throw ParameterError("fixed position x must be finite");
  }

  const auto& rules = hermite_rules();
  const MomentumAmplitude rest(dist, 0.0, options);

  // Exact kinematics needs A_{|p|} at every Hermite node; plans are built on
  // first use and shared across grid points.
  std::mutex cache_mutex;
  std::map<double, std::shared_ptr<const MomentumAmplitude>> cache;
  auto amplitude_at = [&](double p) -> std::shared_ptr<const MomentumAmplitude> {
    const double key = std::abs(p);
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto made = std::make_shared<const MomentumAmplitude>(dist, key, options);
    cache.emplace(key, made);
    return made;
  };

  const double scale = std::numbers::sqrt2 * smear.sigma_p;
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);

  auto point = [&](double t) -> PointValue {
    const double x = x_rule.position(v, t);
    const double t_eff = gamma * (t - v * x);
    const double drift = v * t - x;

    PointValue base;
    if (model != PhaseModel::Exact) base = rest.evaluate(t_eff);
    if (base.failed) return base;

    std::string note = base.note;
    auto apply_rule = [&](const special::QuadratureRule& rule, double& err) -> cplx {
      cplx acc(0.0, 0.0);
      err = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double w = rule.weights[j] * inv_sqrt_pi;
        if (w == 0.0) continue;
        const double p = smear.p_bar + scale * rule.nodes[j];
        const cplx drift_phase =
            model == PhaseModel::CorrectedApprox ? cplx(1.0, 0.0) : std::polar(1.0, -gamma * p * drift);
        if (model == PhaseModel::Exact) {
          const PointValue a = amplitude_at(p)->evaluate(t_eff);
          if (a.failed) return cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
          if (!a.note.empty() && note.empty()) note = a.note;
          acc += w * drift_phase * a.amplitude;
          err += w * a.error_bound;
        } else {
          acc += w * drift_phase;
        }
      }
      return acc;
    };

    double err_prev = 0.0;
    cplx prev = apply_rule(rules[0], err_prev);
    double err_cur = err_prev;
    cplx cur = prev;
    bool agreed = false;
    double gap = 0.0;
    for (std::size_t r = 1; r < rules.size(); ++r) {
      cur = apply_rule(rules[r], err_cur);
      gap = std::abs(cur - prev);
      if (model != PhaseModel::Exact) gap *= std::abs(base.amplitude);
      if (!std::isfinite(gap)) break;
      if (gap <= kHermiteAgreement) {
        agreed = true;
        break;
      }
      prev = cur;
    }

    PointValue out;
    if (model == PhaseModel::Exact) {
      out.amplitude = cur;
      out.error_bound = err_cur + gap;
    } else {
      out.amplitude = base.amplitude * cur;
      out.error_bound = base.error_bound * std::abs(cur) + gap;
    }
    out.failed = !std::isfinite(out.amplitude.real());
    out.note = note;
    if (!agreed && !out.failed) {
      if (!out.note.empty()) out.note += "; ";
      out.note += "momentum rule not converged at " + std::to_string(kMaxHermite) + " nodes";
    }
    return out;
  };

  std::string label = "velocity v=" + format_number(v) + " model=" + std::string(to_string(model)) +
                      " x=" + x_rule.describe();
  AmplitudeSeries series = assemble(grid, std::move(label), options.threads, point);
  const RegimeCheck regime = check_regime(dist.Gamma(), smear.sigma_p, dist.M());
  if (!regime.satisfied()) {
    series.warnings.push_back(regime.message(dist.Gamma(), smear.sigma_p, dist.M()));
  }
  return series;
}

}  // namespace reldecay
