#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "reldecay/special.hpp"

using namespace reldecay::special;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const auto r = gauss_legendre(32);
  double s0 = 0, s62 = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    s0 += r.weights[i];
    s62 += r.weights[i] * std::pow(r.nodes[i], 62);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s62 == doctest::Approx(2.0 / 63.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Hermite moments") {
  for (std::size_t n : {64u, 128u, 1024u}) {
    const auto r = gauss_hermite(n);
    double s0 = 0, s2 = 0, s4 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = r.nodes[i];
      s0 += r.weights[i];
      s2 += r.weights[i] * x * x;
      s4 += r.weights[i] * x * x * x * x;
    }
    const double sp = std::sqrt(std::numbers::pi);
    CHECK(s0 == doctest::Approx(sp).epsilon(1e-13));
    CHECK(s2 == doctest::Approx(sp / 2).epsilon(1e-12));
    CHECK(s4 == doctest::Approx(3 * sp / 4).epsilon(1e-12));
  }
}

TEST_CASE("Legendre values match the three-term closed forms") {
  std::vector<double> P(5);
  legendre_values(0.3, P);
  CHECK(P[0] == 1.0);
  CHECK(P[1] == doctest::Approx(0.3));
  CHECK(P[2] == doctest::Approx(0.5 * (3 * 0.09 - 1)));
  CHECK(P[3] == doctest::Approx(0.5 * (5 * 0.027 - 3 * 0.3)));
}

TEST_CASE("spherical Bessel sequence against the standard library") {
  std::vector<double> j(40);
  for (double x : {0.0, 1e-8, 0.3, 2.0, 17.5, 39.0, 41.0, 250.0, 1e4}) {
    spherical_bessel_sequence(x, j);
    for (unsigned n = 0; n < j.size(); ++n) {
      const double ref = std::sph_bessel(n, x);
      REQUIRE(std::abs(j[n] - ref) <= 1e-13 * std::max(1.0, std::abs(ref)) + 1e-300);
    }
  }
}
