#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "reldecay/error.hpp"
#include "reldecay/massdist.hpp"

using namespace reldecay;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double trapezoid(const MassDistribution& d, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.5 * (omega_eval(d, a) + omega_eval(d, b));
  for (std::size_t i = 1; i < n; ++i) s += omega_eval(d, a + h * static_cast<double>(i));
  return s * h;
}

}  // namespace

TEST_CASE("untruncated Breit-Wigner peak and norm") {
  const auto d = normalize(MassDistribution::breit_wigner(1.0, 0.01, -kInf));
  CHECK(d.untruncated());
  CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(omega_eval(d, 1.0) == doctest::Approx(2.0 / (std::numbers::pi * 0.01)).epsilon(1e-14));
}

TEST_CASE("threshold Breit-Wigner norm closed form") {
  const auto d = normalize(MassDistribution::breit_wigner(1.0, 0.01, 0.0));
  const double expect = 1.0 / ((0.5 + std::atan(200.0) / std::numbers::pi));
  CHECK(d.norm() == doctest::Approx(expect).epsilon(1e-14));
  CHECK(d.norm() == doctest::Approx(1.00159).epsilon(1e-5));
}

TEST_CASE("peak density against a fine trapezoid normalization") {
  const auto raw = MassDistribution::breit_wigner(1.0, 0.2, 0.0);
  const auto d = normalize(raw);
  const double hi = 1.0 + 200 * 0.2;
  const double tail = 0.5 - std::atan(2.0 * (hi - 1.0) / 0.2) / std::numbers::pi;
  const double N = 1.0 / (trapezoid(raw, 0.0, hi, 1000000) + tail);
  CHECK(d.norm() == doctest::Approx(N).epsilon(1e-8));
  CHECK(omega_eval(d, 1.0) == doctest::Approx(N * 2.0 / (std::numbers::pi * 0.2)).epsilon(1e-8));
}

TEST_CASE("below threshold the density vanishes exactly") {
  const auto bw = normalize(MassDistribution::breit_wigner(1.0, 0.1, 0.3));
  const auto ga = normalize(MassDistribution::gaussian(1.0, 0.2, 0.5));
  for (double m : {-5.0, 0.0, 0.29999, 0.3 - 1e-12}) CHECK(omega_eval(bw, m) == 0.0);
  CHECK(omega_eval(bw, 0.3 - 1.0) == 0.0);
  CHECK(omega_eval(ga, 0.5 - 1.0) == 0.0);
  CHECK(omega_eval(ga, 0.49) == 0.0);
}

TEST_CASE("non-finite m is a domain error") {
  const auto d = normalize(MassDistribution::breit_wigner(1.0, 0.1));
  CHECK_THROWS_AS(omega_eval(d, std::nan("")), DomainError);
  CHECK_THROWS_AS(omega_eval(d, kInf), DomainError);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(MassDistribution::breit_wigner(1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(MassDistribution::breit_wigner(1.0, -1.0), ParameterError);
  CHECK_THROWS_AS(normalize(MassDistribution::breit_wigner(1.0, 0.1, 1.0)), ParameterError);
  CHECK_THROWS_AS(MassDistribution::gaussian(1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(MassDistribution::tabulated({{0.0, 1.0}}), ParameterError);
}

TEST_CASE("uniform table is already normalized") {
  const auto d = normalize(MassDistribution::tabulated({{0.5, 1.0}, {1.5, 1.0}}));
  CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(omega_eval(d, 1.0) == doctest::Approx(1.0));
  const Support s = effective_support(d, 1e-3);
  CHECK(s.lo == 0.5);
  CHECK(s.hi == 1.5);
}

TEST_CASE("normalization holds on a fine grid for random distributions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double M = 0.5 + U(rng);
    const double G = 0.02 + 0.2 * U(rng);
    const double mu0 = M - (0.5 + 3.0 * U(rng)) * G;
    const auto g = normalize(MassDistribution::gaussian(M, G, mu0));
    const double I = trapezoid(g, mu0, M + 12 * G, 200000);
    CHECK(I == doctest::Approx(1.0).epsilon(1e-8));
    const auto b = normalize(MassDistribution::breit_wigner(M, G, mu0));
    CHECK(probability_mass(b, mu0, kInf) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("nonnegativity for random parameter sets") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int negatives = 0;
  for (int k = 0; k < 100; ++k) {
    const auto d = normalize(MassDistribution::breit_wigner(1.0 + U(rng), 0.01 + U(rng), U(rng)));
    for (int j = 0; j < 100; ++j) negatives += omega_eval(d, -1.0 + 5.0 * U(rng)) < 0.0;
  }
  CHECK(negatives == 0);
}

TEST_CASE("effective support of a threshold Breit-Wigner") {
  const auto d = normalize(MassDistribution::breit_wigner(1.0, 0.01, 0.0));
  const Support s = effective_support(d, 1e-6);
  CHECK(s.lo == 0.0);
  CHECK(probability_mass(d, s.hi, kInf) < 1e-6);
  CHECK(probability_mass(d, s.hi, kInf) > 0.5e-6);
}

TEST_CASE("Gaussian support within seven sigma") {
  const auto d = normalize(MassDistribution::gaussian(1.0, 0.05, 0.0));
  const Support s = effective_support(d, 1e-8);
  CHECK(s.lo >= 1.0 - 7 * 0.05);
  CHECK(s.hi <= 1.0 + 7 * 0.05);
  CHECK(1.0 - probability_mass(d, s.lo, s.hi) < 1e-8);
}

TEST_CASE("enlarging eps never widens the support") {
  for (const auto& d : {normalize(MassDistribution::breit_wigner(1.0, 0.05, 0.0)),
                        normalize(MassDistribution::breit_wigner(1.0, 0.05, -kInf)),
                        normalize(MassDistribution::gaussian(1.0, 0.05, 0.0))}) {
    Support prev = effective_support(d, 1e-14);
    for (double eps = 1e-13; eps < 0.5; eps *= 10.0) {
      const Support s = effective_support(d, eps);
      CHECK(s.lo >= prev.lo);
      CHECK(s.hi <= prev.hi);
      prev = s;
    }
  }
}

TEST_CASE("tabulated CSV loading") {
  const std::string path = "massdist_table_test.csv";
  {
    std::ofstream f(path);
    f << "m,omega\n0.5,0\n1.0,2\n1.5,0\n";
  }
  const auto d = normalize(load_tabulated_csv(path));
  CHECK(d.kind() == DistributionKind::Tabulated);
  CHECK(omega_eval(d, 1.0) == doctest::Approx(2.0));
  CHECK(omega_eval(d, 0.75) == doctest::Approx(1.0));
  {
    std::ofstream f(path);
    f << "0.5,1\n1.5,1\n";
  }
  CHECK_THROWS(load_tabulated_csv(path));
  std::remove(path.c_str());
}
