#include "reldecay/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "reldecay/error.hpp"
#include "reldecay/special.hpp"

namespace reldecay {
namespace {

using cplx = std::complex<double>;

// Largest phase t * L admitted on the square-root edge panel.
constexpr double kEdgePhase = 20.0;
constexpr std::size_t kEdgeNodes = 64;
constexpr std::size_t kEdgeCheckNodes = 40;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Neumaier-compensated complex accumulator; order-dependent only through the
// caller's fixed iteration order.
struct CompensatedSum {
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

  static void add(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  void operator+=(cplx z) {
    add(re, cre, z.real());
    add(im, cim, z.imag());
  }
  cplx value() const { return {re + cre, im + cim}; }
};

double mass_to_offset(double m, double m_lo, double p, double E_lo) {
  if (p == 0.0) return m - m_lo;
  return (m - m_lo) * (m + m_lo) / (std::hypot(m, p) + E_lo);
}

}  // namespace

FourierIntegrand to_energy_representation(const MassDistribution& dist, double p, double eps) {
  if (!dist.normalized()) {
    throw PreconditionError("to_energy_representation: distribution must be normalized");
  }
  if (!std::isfinite(p)) throw DomainError("to_energy_representation: p must be finite");
  p = std::abs(p);
  const Support sup = effective_support(dist, eps);
  if (p > 0.0 && sup.lo < 0.0) {
    throw ParameterError(
        "to_energy_representation: p > 0 needs a support with m >= 0 (set mu0 >= 0)");
  }
  const double m_lo = sup.lo;
  const double m_hi = sup.hi;
  const double E_lo = p == 0.0 ? m_lo : std::hypot(m_lo, p);
  const double E_hi = p == 0.0 ? m_hi : std::hypot(m_hi, p);
  const double width = E_hi - E_lo;

  // Untruncated densities are addressed from the peak, everything else from
  // the threshold edge.
  const double origin = dist.untruncated() ? (p == 0.0 ? dist.M() : std::hypot(dist.M(), p)) : E_lo;
  const double x_lo = E_lo - origin;
  const double x_hi = E_hi - origin;

  FourierIntegrand f;
  f.E_lo = E_lo;
  f.E_hi = E_hi;
  f.origin = origin;
  f.time_scale = dist.lifetime();
  f.truncation_mass = probability_mass(dist, -std::numeric_limits<double>::infinity(), m_lo) +
                      probability_mass(dist, m_hi, std::numeric_limits<double>::infinity());
  f.singular_lo = p > 0.0 && m_lo == 0.0 && omega_eval(dist, 0.0) > 0.0;

  if (p == 0.0) {
    f.envelope = [dist, origin, x_lo, x_hi](double x) {
      if (x < x_lo || x > x_hi) return 0.0;
      return omega_eval(dist, origin + x);
    };
  } else {
    // p > 0 implies a finite support starting at m_lo >= 0, so origin == E_lo.
    f.envelope = [dist, m_lo, E_lo, width](double s) {
      if (s < 0.0 || s > width) return 0.0;
      // m^2 = E^2 - p^2 expanded around the edge: m_lo^2 + s (2 E_lo + s).
      const double m = std::sqrt(m_lo * m_lo + s * (2.0 * E_lo + s));
      if (m == 0.0) return std::numeric_limits<double>::infinity();
      return omega_eval(dist, m) * (E_lo + s) / m;
    };
  }

  std::vector<double> marks;
  if (dist.kind() == DistributionKind::Tabulated) {
    for (const auto& row : dist.table()) marks.push_back(row.m);
  } else {
    marks.push_back(dist.M());
    for (double k = 0.5; k < 1e12; k *= 4.0) {
      marks.push_back(dist.M() + k * dist.Gamma());
      marks.push_back(dist.M() - k * dist.Gamma());
    }
  }
  for (double m : marks) {
    if (!(m > m_lo && m < m_hi)) continue;
    const double x = mass_to_offset(m, m_lo, p, E_lo) + (E_lo - origin);
    if (x > x_lo && x < x_hi) f.breakpoints.push_back(x);
  }
  std::sort(f.breakpoints.begin(), f.breakpoints.end());
  f.breakpoints.erase(std::unique(f.breakpoints.begin(), f.breakpoints.end()),
                      f.breakpoints.end());
  return f;
}

FilonPlan::FilonPlan(FourierIntegrand integrand, FilonOptions options)
    : integrand_(std::move(integrand)), options_(options) {
  if (!integrand_.envelope) throw ParameterError("FilonPlan: integrand has no envelope");
  if (!(integrand_.E_hi > integrand_.E_lo) || !std::isfinite(integrand_.width())) {
    throw ParameterError("FilonPlan: integration limits must satisfy E_lo < E_hi");
  }
  if (integrand_.singular_lo && integrand_.origin != integrand_.E_lo) {
    throw ParameterError("FilonPlan: a singular edge must sit at the integrand origin");
  }
  if (options_.nodes < 4) throw ParameterError("FilonPlan: at least 4 nodes per panel");

  const std::size_t n = options_.nodes;
  const auto rule = special::gauss_legendre(n);
  gl_nodes_ = rule.nodes;
  gl_weights_ = rule.weights;
  transform_.assign(n * n, 0.0);
  std::vector<double> pk(n);
  for (std::size_t j = 0; j < n; ++j) {
    special::legendre_values(gl_nodes_[j], pk);
    for (std::size_t k = 0; k < n; ++k) {
      transform_[k * n + j] = 0.5 * (2.0 * k + 1.0) * gl_weights_[j] * pk[k];
    }
  }

  const double width = integrand_.width();
  if (!integrand_.singular_lo) {
    build_regular(integrand_.x_lo(), integrand_.x_hi());
    return;
  }

  // Edge region: shrink until 2u f(u^2) is resolved by one Legendre panel in u.
  double edge = std::min(width, options_.max_panel_width);
  for (double b : integrand_.breakpoints) {
    if (b > 0.0) {
      edge = std::min(edge, b);
      break;
    }
  }
  const auto& f = integrand_.envelope;
  std::vector<double> g(n), c(n);
  for (int iter = 0; iter < 400; ++iter) {
    const double U = std::sqrt(edge);
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = 0.5 * U * (1.0 + gl_nodes_[j]);
      g[j] = 2.0 * u * f(u * u);
      scale = std::max(scale, std::abs(g[j]));
    }
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += transform_[k * n + j] * g[j];
      c[k] = acc;
    }
    const double err = U * (std::abs(c[n - 1]) + std::abs(c[n - 2]));
    if (err <= std::max(options_.panel_tolerance, 256.0 * kEps * U * scale)) break;
    edge *= 0.25;
  }
  edge_width_ = edge;
  if (edge_width_ < width) build_regular(edge_width_, width);
}

FilonPlan::Panel FilonPlan::make_panel(double a, double b) const {
  const std::size_t n = options_.nodes;
  Panel panel;
  panel.center = 0.5 * (a + b);
  panel.half = 0.5 * (b - a);
  panel.coeffs.assign(n, 0.0);
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    g[j] = integrand_.envelope(panel.center + panel.half * gl_nodes_[j]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += transform_[k * n + j] * g[j];
    panel.coeffs[k] = acc;
  }
  panel.error = 2.0 * panel.half * (std::abs(panel.coeffs[n - 1]) + std::abs(panel.coeffs[n - 2]));
  return panel;
}

void FilonPlan::build_regular(double a, double b) {
  std::vector<double> cuts{a};
  for (double s : integrand_.breakpoints) {
    if (s > a && s < b) cuts.push_back(s);
  }
  cuts.push_back(b);

  // Depth-first, left to right, so panels come out sorted.
  struct Span {
    double lo, hi;
    int depth;
  };
  std::vector<Span> stack;
  for (std::size_t i = cuts.size() - 1; i > 0; --i) {
    const double lo = cuts[i - 1];
    const double hi = cuts[i];
    const double w = hi - lo;
    const auto pieces = static_cast<std::size_t>(
        std::max(1.0, std::ceil(w / options_.max_panel_width)));
    for (std::size_t k = pieces; k > 0; --k) {
      const double plo = lo + w * static_cast<double>(k - 1) / static_cast<double>(pieces);
      const double phi = k == pieces ? hi : lo + w * static_cast<double>(k) / static_cast<double>(pieces);
      stack.push_back({plo, phi, 0});
    }
  }

  while (!stack.empty()) {
    const Span span = stack.back();
    stack.pop_back();
    Panel panel = make_panel(span.lo, span.hi);
    double scale = 0.0;
    for (double ck : panel.coeffs) scale = std::max(scale, std::abs(ck));
    const double floor = 256.0 * kEps * 2.0 * panel.half * scale;
    const bool ok = panel.error <= std::max(options_.panel_tolerance, floor);
    const bool tiny = panel.half <= 4.0 * kEps * std::max(1.0, std::abs(panel.center));
    const bool budget = panels_.size() + stack.size() + 2 > options_.max_panels;
    if (ok) {
      interp_error_ += panel.error;
      panels_.push_back(std::move(panel));
      continue;
    }
    if (tiny || budget || span.depth > 200) {
      converged_ = false;
      interp_error_ += std::isfinite(panel.error) ? panel.error : 0.0;
      panels_.push_back(std::move(panel));
      continue;
    }
    const double mid = 0.5 * (span.lo + span.hi);
    stack.push_back({mid, span.hi, span.depth + 1});
    stack.push_back({span.lo, mid, span.depth + 1});
  }
}

std::complex<double> FilonPlan::panel_transform(const Panel& panel, double t) const {
  const std::size_t n = options_.nodes;
  // Stack scratch for the common sizes, heap otherwise.
  double stack_buf[128];
  std::vector<double> heap_buf;
  double* jk = stack_buf;
  if (n > 128) {
    heap_buf.resize(n);
    jk = heap_buf.data();
  }
  special::spherical_bessel_sequence(panel.half * t, std::span<double>(jk, n));
  // (-i)^k cycles through 1, -i, -1, i.
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double term = panel.coeffs[k] * jk[k];
    switch (k & 3U) {
      case 0: re += term; break;
      case 1: im -= term; break;
      case 2: re -= term; break;
      case 3: im += term; break;
    }
  }
  return 2.0 * panel.half * cplx(re, im) * std::polar(1.0, -panel.center * t);
}

std::complex<double> FilonPlan::edge_region(double t, double& error) const {
  static const special::QuadratureRule hi_rule = special::gauss_legendre(kEdgeNodes);
  static const special::QuadratureRule lo_rule = special::gauss_legendre(kEdgeCheckNodes);
  const auto& f = integrand_.envelope;

  double L = edge_width_;
  if (t * L > kEdgePhase) L = kEdgePhase / t;
  const double U = std::sqrt(L);

  auto edge_gl = [&](const special::QuadratureRule& rule) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double u = 0.5 * U * (1.0 + rule.nodes[j]);
      const double G = 2.0 * u * f(u * u);
      acc += (0.5 * U * rule.weights[j] * G) * std::polar(1.0, -u * u * t);
    }
    return acc.value();
  };
  const cplx fine = edge_gl(hi_rule);
  const cplx coarse = edge_gl(lo_rule);
  error = std::abs(fine - coarse);

  CompensatedSum acc;
  acc += fine;
  double a = L;
  while (a < edge_width_) {
    double b = std::min(2.0 * a, edge_width_);
    if (edge_width_ - b < 0.5 * (b - a)) b = edge_width_;
    const Panel panel = make_panel(a, b);
    error += panel.error;
    acc += panel_transform(panel, t);
    a = b;
  }
  return acc.value();
}

QuadratureResult FilonPlan::evaluate(double t) const {
  if (!std::isfinite(t)) throw DomainError("FilonPlan::evaluate: t must be finite");
  if (t < 0.0) {
    QuadratureResult r = evaluate(-t);
    r.value = std::conj(r.value);
    return r;
  }
  if (t > options_.max_time_in_lifetimes * integrand_.time_scale) {
    throw ConvergenceError("t = " + std::to_string(t / integrand_.time_scale) +
                               " lifetimes exceeds the supported horizon",
                           cplx(std::numeric_limits<double>::quiet_NaN(), 0.0),
                           std::numeric_limits<double>::infinity());
  }

  CompensatedSum acc;
  double error = interp_error_;
  if (integrand_.singular_lo) {
    double edge_error = 0.0;
    acc += edge_region(t, edge_error);
    error += edge_error;
  }
  for (const Panel& panel : panels_) acc += panel_transform(panel, t);

  QuadratureResult result;
  result.value = acc.value() * std::polar(1.0, -integrand_.origin * t);
  result.error_bound = error + integrand_.truncation_mass;
  result.panels = panels_.size();
  if (!converged_) {
    throw ConvergenceError("Filon panelization exceeded its budget before reaching tolerance",
                           result.value, result.error_bound);
  }
  return result;
}

QuadratureResult fourier_transform_fast(const FourierIntegrand& integrand, double t,
                                        const FilonOptions& options) {
  if (t < 0.0) throw DomainError("fourier_transform_fast: t must be nonnegative");
  return FilonPlan(integrand, options).evaluate(t);
}

std::size_t oracle_min_points(const FourierIntegrand& integrand, double t) {
  const double oscillations = integrand.width() * std::abs(t) / (2.0 * std::numbers::pi);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(10.0 * oscillations)));
}

QuadratureResult fourier_transform_oracle(const FourierIntegrand& integrand, double t,
                                          std::size_t n_points) {
  if (!std::isfinite(t)) throw DomainError("fourier_transform_oracle: t must be finite");
  const std::size_t need = oracle_min_points(integrand, t);
  if (n_points < need) {
    throw PreconditionError("fourier_transform_oracle: " + std::to_string(n_points) +
                            " points cannot resolve the oscillation (need >= " +
                            std::to_string(need) + ")");
  }
  const auto& f = integrand.envelope;
  const double width = integrand.width();
  CompensatedSum acc;
  double phase_origin = integrand.origin;
  if (!integrand.singular_lo) {
    const double x0 = integrand.x_lo();
    const double h = width / static_cast<double>(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
      const double x = x0 + (static_cast<double>(i) + 0.5) * h;
      acc += (h * f(x)) * std::polar(1.0, -x * t);
    }
  } else {
    const double U = std::sqrt(width);
    const double h = U / static_cast<double>(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
      const double u = (static_cast<double>(i) + 0.5) * h;
      acc += (h * 2.0 * u * f(u * u)) * std::polar(1.0, -u * u * t);
    }
  }
  QuadratureResult result;
  result.value = acc.value() * std::polar(1.0, -phase_origin * t);
  result.error_bound = integrand.truncation_mass;
  result.panels = n_points;
  return result;
}

}  // namespace reldecay
