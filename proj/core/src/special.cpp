#include "reldecay/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace reldecay::special {

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / static_cast<double>(k);
      }
      dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

// Eigenvalues of the symmetric tridiagonal matrix with zero diagonal and
// off-diagonal e[0..n-2] (implicit QL with Wilkinson shifts).
std::vector<double> tridiagonal_eigenvalues(std::vector<double> e) {
  const std::size_t n = e.size() + 1;
  std::vector<double> d(n, 0.0);
  e.push_back(0.0);
  for (std::size_t l = 0; l < n; ++l) {
    for (int iter = 0; iter < 100; ++iter) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

QuadratureRule gauss_hermite(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_hermite: n must be positive");
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  const double dn = static_cast<double>(n);

  // Roots of H_n are the eigenvalues of the Jacobi matrix; they seed Newton
  // on the normalized recurrence, which also yields the weights.
  std::vector<double> off(n - 1);
  for (std::size_t k = 1; k < n; ++k) off[k - 1] = std::sqrt(0.5 * static_cast<double>(k));
  const std::vector<double> guess = tridiagonal_eigenvalues(std::move(off));

  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (std::size_t i = n / 2; i < n; ++i) {
    double z = guess[i];
    double pp = 1.0;
    double log_scale = 0.0;  // the true polynomial values are p * exp(log_scale)
    for (int iter = 0; iter < 20; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      log_scale = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / (dj + 1.0)) * p2 - std::sqrt(dj / (dj + 1.0)) * p3;
        // Large roots of high-order rules overflow the unweighted recurrence.
        if (std::abs(p1) > 1e150) {
          p1 *= 1e-150;
          p2 *= 1e-150;
          log_scale += 150.0 * std::numbers::ln10;
        }
      }
      pp = std::sqrt(2.0 * dn) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    if (n % 2 == 1 && i == n / 2) z = 0.0;
    const double w = std::exp(std::numbers::ln2 - 2.0 * (std::log(std::abs(pp)) + log_scale));
    rule.nodes[i] = z;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

void legendre_values(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double dk = static_cast<double>(k);
    out[k + 1] = ((2.0 * dk + 1.0) * x * out[k] - dk * out[k - 1]) / (dk + 1.0);
  }
}

void spherical_bessel_sequence(double x, std::span<double> out) {
  const std::size_t n = out.size();
  if (n == 0) return;
  if (x == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    return;
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j0 = s / x;
  if (x > static_cast<double>(n)) {
    out[0] = j0;
    if (n > 1) out[1] = s / (x * x) - c / x;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      out[k + 1] = (2.0 * k + 1.0) / x * out[k] - out[k - 1];
    }
    return;
  }

  // Miller: downward recurrence from well above max(n, x), normalized with
  // sum_k (2k + 1) j_k(x)^2 = 1.
  const std::size_t top = n + 40 + static_cast<std::size_t>(std::ceil(x));
  std::vector<double> f(top + 2, 0.0);
  f[top] = 1.0;
  for (std::size_t k = top; k >= 1; --k) {
    f[k - 1] = (2.0 * k + 1.0) / x * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > 1e140) {
      for (std::size_t i = k - 1; i <= top; ++i) f[i] *= 1e-140;
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k <= top; ++k) sum += (2.0 * k + 1.0) * f[k] * f[k];
  double scale = 1.0 / std::sqrt(sum);
  const double j1 = s / (x * x) - c / x;
  if (std::abs(j0) >= std::abs(j1)) {
    if ((f[0] < 0.0) != (j0 < 0.0)) scale = -scale;
  } else {
    if ((f[1] < 0.0) != (j1 < 0.0)) scale = -scale;
  }
  for (std::size_t k = 0; k < n; ++k) out[k] = f[k] * scale;
}

}  // namespace reldecay::special
