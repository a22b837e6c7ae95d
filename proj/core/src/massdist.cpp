#include "reldecay/massdist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "reldecay/error.hpp"

namespace reldecay {
namespace {

constexpr double kPi = std::numbers::pi;
// Budget share actually spent, keeps the excluded mass strictly below eps.
constexpr double kTailShare = 0.999;

void check_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw ParameterError(std::string(name) + " must be finite");
  }
}

void check_threshold(double M, double mu0) {
  if (std::isnan(mu0) || mu0 == std::numeric_limits<double>::infinity()) {
    throw ParameterError("mu0 must be finite or -infinity");
  }
  if (!(M > mu0)) {
    throw ParameterError("M must exceed the threshold mu0");
  }
}

double bw_shape(double M, double Gamma, double m) {
  const double d = m - M;
  return (Gamma / (2.0 * kPi)) / (d * d + 0.25 * Gamma * Gamma);
}

// Lorentzian CDF without normalization: mass in (-inf, m].
double bw_cdf(double M, double Gamma, double m) {
  if (m == -std::numeric_limits<double>::infinity()) return 0.0;
  if (m == std::numeric_limits<double>::infinity()) return 1.0;
  return 0.5 + std::atan(2.0 * (m - M) / Gamma) / kPi;
}

double gauss_shape(double M, double sigma, double m) {
  const double z = (m - M) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
}

// Gaussian upper-tail mass beyond m.
double gauss_upper(double M, double sigma, double m) {
  return 0.5 * std::erfc((m - M) / (sigma * std::numbers::sqrt2));
}

double table_eval(const std::vector<TablePoint>& table, double m) {
  if (m < table.front().m || m > table.back().m) return 0.0;
  auto it = std::upper_bound(table.begin(), table.end(), m,
                             [](double x, const TablePoint& p) { return x < p.m; });
  if (it == table.end()) return table.back().omega;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (m - lo.m) / (hi.m - lo.m);
  return (1.0 - w) * lo.omega + w * hi.omega;
}

double table_mass(const std::vector<TablePoint>& table, double a, double b) {
  a = std::max(a, table.front().m);
  b = std::min(b, table.back().m);
  if (!(b > a)) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < table.size(); ++i) {
    const double lo = std::max(a, table[i].m);
    const double hi = std::min(b, table[i + 1].m);
    if (hi <= lo) continue;
    total += 0.5 * (hi - lo) * (table_eval(table, lo) + table_eval(table, hi));
  }
  return total;
}

}  // namespace

MassDistribution MassDistribution::breit_wigner(double M, double Gamma, double mu0) {
  check_finite(M, "M");
  check_finite(Gamma, "Gamma");
  if (!(Gamma > 0.0)) throw ParameterError("Gamma must be positive");
  check_threshold(M, mu0);
  MassDistribution d;
  d.kind_ = DistributionKind::BreitWigner;
  d.M_ = M;
  d.Gamma_ = Gamma;
  d.mu0_ = mu0;
  return d;
}

MassDistribution MassDistribution::gaussian(double M, double sigma, double mu0) {
  check_finite(M, "M");
  check_finite(sigma, "Gamma");
  if (!(sigma > 0.0)) throw ParameterError("Gamma (Gaussian width) must be positive");
  check_threshold(M, mu0);
  MassDistribution d;
  d.kind_ = DistributionKind::Gaussian;
  d.M_ = M;
  d.Gamma_ = sigma;
  d.mu0_ = mu0;
  return d;
}

MassDistribution MassDistribution::tabulated(std::vector<TablePoint> table) {
  if (table.size() < 2) throw ParameterError("tabulated density needs at least two rows");
  double peak = -1.0;
  std::size_t ipeak = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    check_finite(table[i].m, "m");
    check_finite(table[i].omega, "omega");
    if (table[i].omega < 0.0) throw ParameterError("tabulated omega must be nonnegative");
    if (i > 0 && !(table[i].m > table[i - 1].m)) {
      throw ParameterError("tabulated m values must be strictly increasing");
    }
    if (table[i].omega > peak) {
      peak = table[i].omega;
      ipeak = i;
    }
  }
  if (!(peak > 0.0)) throw ParameterError("tabulated density is identically zero");

  // FWHM from the outermost half-maximum crossings of the interpolant.
  const double half = 0.5 * peak;
  double left = table.front().m;
  for (std::size_t i = ipeak; i > 0; --i) {
    if (table[i - 1].omega < half) {
      const auto& a = table[i - 1];
      const auto& b = table[i];
      left = a.m + (half - a.omega) / (b.omega - a.omega) * (b.m - a.m);
      break;
    }
  }
  double right = table.back().m;
  for (std::size_t i = ipeak; i + 1 < table.size(); ++i) {
    if (table[i + 1].omega < half) {
      const auto& a = table[i];
      const auto& b = table[i + 1];
      right = a.m + (a.omega - half) / (a.omega - b.omega) * (b.m - a.m);
      break;
    }
  }

  MassDistribution d;
  d.kind_ = DistributionKind::Tabulated;
  d.mu0_ = table.front().m;
  d.M_ = table[ipeak].m;
  d.Gamma_ = std::max(right - left, 0.0);
  if (!(d.Gamma_ > 0.0)) d.Gamma_ = table.back().m - table.front().m;
  if (!(d.M_ > d.mu0_)) {
    // Peak sits on the first row; the invariant M > mu0 is kept by moving M to
    // the interval midpoint.
    d.M_ = 0.5 * (table.front().m + table.back().m);
  }
  d.table_ = std::move(table);
  return d;
}

double omega_eval(const MassDistribution& dist, double m) {
  if (!std::isfinite(m)) throw DomainError("omega_eval: m must be finite");
  if (m < dist.mu0()) return 0.0;
  switch (dist.kind()) {
    case DistributionKind::BreitWigner:
      return dist.norm() * bw_shape(dist.M(), dist.Gamma(), m);
    case DistributionKind::Gaussian:
      return dist.norm() * gauss_shape(dist.M(), dist.Gamma(), m);
    case DistributionKind::Tabulated:
      return dist.norm() * table_eval(dist.table(), m);
  }
  return 0.0;
}

double probability_mass(const MassDistribution& dist, double a, double b) {
  a = std::max(a, dist.mu0());
  if (!(b > a)) return 0.0;
  switch (dist.kind()) {
    case DistributionKind::BreitWigner: {
      const double M = dist.M();
      const double G = dist.Gamma();
      // Difference of arctangents written to stay accurate deep in the tails.
      double mass;
      if (a >= M) {
        mass = (std::atan(G / (2.0 * (a - M))) -
                (std::isinf(b) ? 0.0 : std::atan(G / (2.0 * (b - M))))) / kPi;
      } else {
        mass = bw_cdf(M, G, b) - bw_cdf(M, G, a);
      }
      return dist.norm() * mass;
    }
    case DistributionKind::Gaussian:
      return dist.norm() * (gauss_upper(dist.M(), dist.Gamma(), a) -
                            gauss_upper(dist.M(), dist.Gamma(), b));
    case DistributionKind::Tabulated:
      return dist.norm() * table_mass(dist.table(), a, b);
  }
  return 0.0;
}

MassDistribution normalize(MassDistribution dist) {
  if (dist.kind_ != DistributionKind::Tabulated) {
    check_threshold(dist.M_, dist.mu0_);
    if (!(dist.Gamma_ > 0.0)) throw ParameterError("Gamma must be positive");
  }
  double raw = 0.0;
  switch (dist.kind_) {
    case DistributionKind::BreitWigner:
      raw = dist.untruncated()
                ? 1.0
                : (kPi / 2.0 + std::atan(2.0 * (dist.M_ - dist.mu0_) / dist.Gamma_)) / kPi;
      break;
    case DistributionKind::Gaussian:
      raw = dist.untruncated() ? 1.0 : gauss_upper(dist.M_, dist.Gamma_, dist.mu0_);
      break;
    case DistributionKind::Tabulated:
      raw = table_mass(dist.table_, dist.table_.front().m, dist.table_.back().m);
      break;
  }
  if (!(raw > 0.0)) throw ParameterError("distribution has no mass above threshold");
  dist.norm_ = 1.0 / raw;
  dist.normalized_ = true;
  return dist;
}

Support effective_support(const MassDistribution& dist, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("effective_support: eps must lie in (0, 1)");
  const double M = dist.M();
  const double G = dist.Gamma();
  switch (dist.kind()) {
    case DistributionKind::BreitWigner: {
      const double N = dist.norm();
      // Offset beyond which a Lorentzian tail (scaled by N) holds `share`.
      auto tail_offset = [&](double share) {
        const double angle = kPi * share / N;
        if (angle >= kPi / 2.0) return 0.0;
        return 0.5 * G / std::tan(angle);
      };
      if (dist.untruncated()) {
        const double share = 0.5 * kTailShare * eps;
        const double off = tail_offset(share);
        return {M - off, M + off};
      }
      return {dist.mu0(), M + tail_offset(kTailShare * eps)};
    }
    case DistributionKind::Gaussian: {
      const double share = 0.5 * kTailShare * eps / dist.norm();
      // Bisection on the standardized upper tail: P(Z > z) = share.
      double lo = 0.0;
      double hi = 40.0;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 * std::erfc(mid / std::numbers::sqrt2) > share) lo = mid; else hi = mid;
      }
      const double z = hi;
      const double s = dist.Gamma();
      return {std::max(dist.mu0(), M - z * s), M + z * s};
    }
    case DistributionKind::Tabulated:
      return {dist.table().front().m, dist.table().back().m};
  }
  return {dist.mu0(), M};
}

MassDistribution load_tabulated_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open tabulated density '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("empty tabulated density file");
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    return s;
  };
  if (strip(line) != "m,omega") {
    throw ParameterError("tabulated density header must be \"m,omega\"");
  }
  std::vector<TablePoint> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParameterError("line " + std::to_string(lineno) + ": expected two columns");
    }
    try {
      std::size_t used = 0;
      const std::string a = line.substr(0, comma);
      const std::string b = line.substr(comma + 1);
      const double m = std::stod(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      const double w = std::stod(b, &used);
      if (used != b.size()) throw std::invalid_argument(b);
      rows.push_back({m, w});
    } catch (const std::logic_error&) {
      throw ParameterError("line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return MassDistribution::tabulated(std::move(rows));
}

}  // namespace reldecay
