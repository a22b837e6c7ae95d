#include <cmath>
#include <sstream>

#include "doctest.h"
#include "reldecay/config.hpp"
#include "reldecay/csv.hpp"
#include "reldecay/error.hpp"

using namespace reldecay;

namespace {

const char* kMinimal = R"(
# minimal
distribution.kind = breit_wigner
distribution.M = 1
distribution.Gamma = 0.01
distribution.mu0 = 0
kinematics.p = 1.7320508075688772
grid.t_max = 100
grid.n_points = 200
grid.spacing = log
)";

}  // namespace

TEST_CASE("minimal config") {
  const auto cfg = parse_config(kMinimal);
  REQUIRE(cfg.dist.has_value());
  CHECK(cfg.gamma() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cfg.grid.n_points == 200);
  CHECK(cfg.grid.spacing == GridSpacing::Log);
  CHECK(cfg.warnings.empty());
  const auto grid = cfg.grid.build(cfg.dist->lifetime());
  CHECK(grid.points.back() == doctest::Approx(1e4));
  CHECK(cfg.entries.size() == 8);
}

TEST_CASE("p and v are exclusive") {
  std::string text = std::string(kMinimal) + "kinematics.v = 0.5\nsmearing.sigma_p = 0.01\n";
  CHECK_THROWS_AS(parse_config(text), ConfigError);
  CHECK_THROWS_AS(parse_config("distribution.M = 1\ndistribution.Gamma = 0.1\n"), ConfigError);
}

TEST_CASE("unknown keys are listed") {
  try {
    parse_config(std::string(kMinimal) + "grid.tmax = 3\nfoo = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("grid.tmax") != std::string::npos);
    CHECK(msg.find("foo") != std::string::npos);
  }
}

TEST_CASE("invariant violations name the field") {
  auto message = [](const std::string& extra) {
    try {
      parse_config(std::string(kMinimal) + extra);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("grid.n_points = 1\n").find("grid.n_points") != std::string::npos);
  CHECK(message("quadrature.eps = 0\n").find("quadrature.eps") != std::string::npos);
  CHECK(message("grid.spacing = cubic\n").find("grid.spacing") != std::string::npos);
  CHECK(message("grid.t_max = 100\n").find("duplicate") != std::string::npos);
  CHECK_THROWS_AS(parse_config("distribution.M = 1\ndistribution.Gamma = 0.1\nkinematics.p = 1\ngrid.t_max = 2e5\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("distribution.M = 1\ndistribution.Gamma = -0.1\nkinematics.p = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("distribution.M = 1\ndistribution.Gamma = abc\nkinematics.p = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("this line has no equals sign\n"), ConfigError);
}

TEST_CASE("regime warning") {
  const auto cfg = parse_config(
      "distribution.M = 1\ndistribution.Gamma = 1e-4\nkinematics.v = 0.5\nsmearing.sigma_p = 0.5\n"
      "phase_models = carlo, corrected\nvelocity.x_rule.corrected = fixed:0.25\n");
  REQUIRE(cfg.warnings.size() == 1);
  CHECK(cfg.warnings[0].find("sigma_p <= M/10 violated") != std::string::npos);
  CHECK(cfg.phase_models.size() == 2);
  CHECK(cfg.x_rule_for(PhaseModel::CarloApprox).kind == XRule::Kind::Comoving);
  CHECK(cfg.x_rule_for(PhaseModel::CorrectedApprox).kind == XRule::Kind::Fixed);
  CHECK(cfg.x_rule_for(PhaseModel::CorrectedApprox).x == 0.25);
  CHECK(cfg.gamma() == doctest::Approx(1.0 / std::sqrt(0.75)));
}

TEST_CASE("scan-only config") {
  const auto cfg = parse_config("analyses.scan = true\nscan.m = 1, 2\nscan.p_par = linspace(-1, 1, 5)\nscan.v = 0, 0.5\n");
  CHECK_FALSE(cfg.has_amplitudes());
  CHECK(cfg.scan.p_par.size() == 5);
  CHECK(cfg.scan.p_par[2] == 0.0);
  CHECK_FALSE(cfg.analyses.compare);
  CHECK_THROWS_AS(parse_config("analyses.scan = true\nscan.m = 1\nscan.p_par = 0\nscan.v = 1.0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("output_dir = x\n"), ConfigError);
}

TEST_CASE("untruncated density only at rest") {
  CHECK_NOTHROW(parse_config("distribution.M = 1\ndistribution.Gamma = 0.1\ndistribution.mu0 = -inf\nkinematics.p = 0\n"));
  CHECK_THROWS_AS(
      parse_config("distribution.M = 1\ndistribution.Gamma = 0.1\ndistribution.mu0 = -inf\nkinematics.p = 1\n"),
      ConfigError);
}

TEST_CASE("csv formatting") {
  CHECK(csv::number(0.1) == "0.10000000000000001");
  CHECK(csv::number(2.0) == "2");
  CHECK(csv::field("a,b") == "\"a,b\"");
  CHECK(csv::field("say \"x\", ok") == "\"say \"\"x\"\", ok\"");
  CHECK(csv::field("plain") == "plain");
  std::ostringstream os;
  csv::write_consistency(os, {consistency_residual(1.0, 0.2, 0.5)});
  CHECK(os.str().rfind("m,p_par,v,r_identity,r_carlo,r_corrected\n1,0.20000000000000001,0.5,", 0) == 0);
}
