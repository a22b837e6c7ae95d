#include <cmath>
#include <numbers>

#include "doctest.h"
#include "reldecay/amplitudes.hpp"
#include "reldecay/error.hpp"

using namespace reldecay;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

MassDistribution bw(double M, double G, double mu0) { return normalize(MassDistribution::breit_wigner(M, G, mu0)); }

}  // namespace

TEST_CASE("time grids") {
  const auto lin = TimeGrid::linear(100.0, 5.0, 11);
  CHECK(lin.size() == 11);
  CHECK(lin.points.front() == 0.0);
  CHECK(lin.points.back() == doctest::Approx(500.0));
  const auto lg = TimeGrid::log(100.0, 0.01, 1000.0, 50, true);
  CHECK(lg.size() == 51);
  CHECK(lg.points[0] == 0.0);
  CHECK(lg.points[1] == doctest::Approx(1.0));
  CHECK(lg.points.back() == 1e5);
  CHECK_THROWS_AS(TimeGrid::from_points(1.0, {0.0, 2.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(TimeGrid::from_points(1.0, {0.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(TimeGrid::from_points(1.0, {-1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(TimeGrid::linear(1.0, 2e5, 10), ParameterError);
  CHECK_THROWS_AS(TimeGrid::linear(1.0, 10.0, 1), ParameterError);
}

TEST_CASE("momentum smearing density integrates to one") {
  MomentumSmearing s{0.3, 0.02};
  double sum = 0.0;
  const double h = 1e-4;
  for (double p = 0.3 - 0.4; p <= 0.3 + 0.4; p += h) sum += s.density(p) * h;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS((MomentumSmearing{0.0, 0.0}).validate(), ParameterError);
}

TEST_CASE("regime check uses factor-of-ten separations") {
  CHECK(check_regime(1e-4, 1e-2, 1.0).satisfied());
  const auto r = check_regime(1e-4, 0.5, 1.0);
  CHECK(r.width_below_spread);
  CHECK_FALSE(r.spread_below_mass);
  CHECK(r.message(1e-4, 0.5, 1.0).find("sigma_p <= M/10 violated") != std::string::npos);
  CHECK_FALSE(check_regime(1e-2, 1e-2, 1.0).width_below_spread);
}

TEST_CASE("survival at rest") {
  const auto d = bw(1.0, 1e-3, 0.0);
  const auto grid = TimeGrid::linear(d.lifetime(), 5.0, 51);
  const auto s = survival_rest(d, grid);
  CHECK(s.label == "rest");
  CHECK(std::abs(s.probabilities[0] - 1.0) <= s.error_bounds[0]);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double expo = std::exp(-grid.points[i] / d.lifetime());
    CHECK(std::abs(s.probabilities[i] - expo) / expo < 1e-2);
    CHECK(s.probabilities[i] == std::norm(s.amplitudes[i]));
    CHECK(s.probabilities[i] <= 1.0 + s.error_bounds[i]);
    CHECK(s.notes[i].empty());
  }
}

TEST_CASE("untruncated Breit-Wigner at two lifetimes") {
  const auto d = bw(1.0, 0.01, -kInf);
  const auto s = survival_rest(d, TimeGrid::from_points(d.lifetime(), {0.0, 2.0 * d.lifetime()}));
  CHECK(s.probabilities[1] == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
  CHECK(s.probabilities[1] == doctest::Approx(0.1353).epsilon(1e-3));
}

TEST_CASE("p = 0 runs the rest path bit for bit") {
  const auto d = bw(1.0, 0.01, 0.0);
  const auto grid = TimeGrid::log(d.lifetime(), 0.01, 100.0, 40, true);
  const auto a = survival_rest(d, grid);
  const auto b = survival_momentum(d, 0.0, grid);
  CHECK(a.label == b.label);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.amplitudes[i] == b.amplitudes[i]);
    CHECK(a.error_bounds[i] == b.error_bounds[i]);
  }
  CHECK_THROWS_AS(survival_momentum(d, -1.0, grid), DomainError);
}

TEST_CASE("definite momentum follows the dilated law at early times") {
  const auto d = bw(1.0, 1e-3, 0.0);
  const double p = std::sqrt(3.0);
  const auto grid = TimeGrid::linear(d.lifetime(), 5.0, 26);
  const auto s = survival_momentum(d, p, grid);
  const MomentumAmplitude rest(d, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(std::abs(s.probabilities[i] - rest.probability(grid.points[i] / 2.0)) < 0.02);
    CHECK(s.probabilities[i] <= 1.0 + s.error_bounds[i]);
  }
}

TEST_CASE("series are independent of the worker count and of grid refinement") {
  const auto d = bw(1.0, 0.01, 0.0);
  EvaluationOptions one, many;
  many.threads = 7;
  const auto coarse = TimeGrid::linear(d.lifetime(), 20.0, 21);
  const auto fine = TimeGrid::linear(d.lifetime(), 20.0, 41);
  const auto a = survival_momentum(d, 0.8, coarse, one);
  const auto b = survival_momentum(d, 0.8, coarse, many);
  const auto c = survival_momentum(d, 0.8, fine, many);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.amplitudes[i] == b.amplitudes[i]);
    REQUIRE(fine.points[2 * i] == coarse.points[i]);
    CHECK(a.amplitudes[i] == c.amplitudes[2 * i]);
  }
}

TEST_CASE("oracle engine agrees with the fast engine") {
  const auto d = bw(1.0, 0.1, 0.0);
  EvaluationOptions fast, oracle;
  fast.eps = oracle.eps = 1e-4;
  oracle.engine = Engine::Oracle;
  oracle.oracle_floor = 400000;
  const MomentumAmplitude a(d, 0.5, fast), b(d, 0.5, oracle);
  for (double t : {0.0, 10.0, 40.0}) {
    const auto x = a.evaluate(t), y = b.evaluate(t);
    CHECK_FALSE(y.failed);
    CHECK(std::abs(x.amplitude - y.amplitude) < 1e-6);
  }
  EvaluationOptions capped = oracle;
  capped.oracle_cap = 1000;
  const auto z = MomentumAmplitude(d, 0.5, capped).evaluate(10.0);
  CHECK(z.failed);
  CHECK_FALSE(z.note.empty());
}

TEST_CASE("velocity frame: v = 0 collapses to the rest amplitude") {
  const auto d = bw(1.0, 1e-3, 0.0);
  const auto grid = TimeGrid::linear(d.lifetime(), 5.0, 11);
  const auto rest = survival_rest(d, grid);
  const auto s = survival_velocity_frame(d, {0.0, 1e-2}, 0.0, XRule::comoving(), PhaseModel::CorrectedApprox, grid);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s.amplitudes[i] - rest.amplitudes[i]) < 1e-8);
  CHECK(s.warnings.empty());
  CHECK_THROWS_AS(
      survival_velocity_frame(d, {0.0, 1e-2}, 1.0, XRule::comoving(), PhaseModel::Exact, grid), DomainError);
}

TEST_CASE("velocity frame: the two approximations give the two laws") {
  const auto d = bw(1.0, 1e-4, 0.0);
  const MomentumSmearing smear{0.0, 1e-2};
  const double v = std::sqrt(3.0) / 2.0;
  const double g = gamma_from_v(v);
  const auto grid = TimeGrid::linear(d.lifetime(), 5.0, 21);
  const MomentumAmplitude rest(d, 0.0);
  const auto carlo = survival_velocity_frame(d, smear, v, XRule::comoving(), PhaseModel::CarloApprox, grid);
  const auto corrected = survival_velocity_frame(d, smear, v, XRule::fixed(0.0), PhaseModel::CorrectedApprox, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.points[i];
    CHECK(std::abs(carlo.probabilities[i] - rest.probability(t / g)) < 0.02);
    CHECK(std::abs(corrected.probabilities[i] - rest.probability(g * t)) < 0.02);
  }
  CHECK(carlo.label.find("model=carlo") != std::string::npos);
  CHECK(corrected.label.find("x=fixed(0)") != std::string::npos);
}

TEST_CASE("velocity frame: exact kinematics, comoving, regime warning") {
  const auto d = bw(1.0, 1e-3, 0.0);
  const double v = 0.6;
  const auto grid = TimeGrid::from_points(d.lifetime(), {0.0, 1000.0, 3000.0});
  const MomentumAmplitude rest(d, 0.0);
  const auto s = survival_velocity_frame(d, {0.0, 0.5}, v, XRule::comoving(), PhaseModel::Exact, grid);
  REQUIRE(s.warnings.size() == 1);
  CHECK(s.warnings[0].find("sigma_p <= M/10") != std::string::npos);
  const auto tight = survival_velocity_frame(d, {0.0, 1e-2}, v, XRule::comoving(), PhaseModel::Exact, grid);
  CHECK(tight.warnings.empty());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(tight.probabilities[i] - rest.probability(grid.points[i] / 1.25)) < 0.02);
    CHECK(tight.notes[i].empty());
  }
}

TEST_CASE("probability bound") {
  CHECK(probability_bound({0.6, 0.0}, 1e-3) == doctest::Approx(2 * 0.6 * 1e-3 + 1e-6));
}
