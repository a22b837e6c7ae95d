#include "reldecay/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "reldecay/error.hpp"

namespace reldecay {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double parse_real(const std::string& key, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(key + ": expected a number, got '" + std::string(text) + "'");
  }
  return x;
}

long long parse_integer(const std::string& key, std::string_view text) {
  text = trim(text);
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(key + ": expected an integer, got '" + std::string(text) + "'");
  }
  return x;
}

bool parse_bool(const std::string& key, std::string_view text) {
  const std::string v = lower(trim(text));
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

// "a, b, c" or "linspace(a, b, n)".
std::vector<double> parse_real_list(const std::string& key, std::string_view text) {
  text = trim(text);
  if (text.starts_with("linspace(") && text.ends_with(")")) {
    const auto args = split_list(text.substr(9, text.size() - 10));
    if (args.size() != 3) throw ConfigError(key + ": linspace takes (first, last, count)");
    const double a = parse_real(key, args[0]);
    const double b = parse_real(key, args[1]);
    const long long n = parse_integer(key, args[2]);
    if (n < 1) throw ConfigError(key + ": linspace count must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
  }
  std::vector<double> out;
  for (auto item : split_list(text)) out.push_back(parse_real(key, item));
  return out;
}

// "comoving", "fixed" (uses fallback_x) or "fixed:<x>".
XRule parse_x_rule(const std::string& key, std::string_view text, double fallback_x) {
  const std::string v = lower(trim(text));
  if (v == "comoving") return XRule::comoving();
  if (v == "fixed") return XRule::fixed(fallback_x);
  if (v.starts_with("fixed:")) return XRule::fixed(parse_real(key, std::string_view(v).substr(6)));
  throw ConfigError(key + ": expected comoving, fixed or fixed:<x>");
}

DistributionKind parse_kind(const std::string& key, std::string_view text) {
  const std::string v = lower(trim(text));
  if (v == "breit_wigner" || v == "breitwigner" || v == "bw") return DistributionKind::BreitWigner;
  if (v == "gaussian") return DistributionKind::Gaussian;
  if (v == "tabulated") return DistributionKind::Tabulated;
  throw ConfigError(key + ": unknown distribution kind '" + v + "'");
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "distribution.kind", "distribution.M", "distribution.Gamma", "distribution.sigma",
      "distribution.mu0", "distribution.table", "kinematics.p", "kinematics.v",
      "smearing.p_bar", "smearing.sigma_p", "smearing.shape", "phase_models",
      "velocity.x_rule", "velocity.x", "velocity.x_rule.exact", "velocity.x_rule.carlo",
      "velocity.x_rule.corrected", "grid.t_max", "grid.n_points", "grid.spacing", "grid.t_min",
      "grid.include_zero", "analyses.compare", "analyses.transition", "analyses.scan",
      "analysis.window_min", "analysis.window_max", "analysis.transition_threshold", "scan.m",
      "scan.p_par", "scan.v", "output_dir", "seed", "quadrature.eps"};
  return keys;
}

}  // namespace

MassDistribution DistributionSpec::build() const {
  switch (kind) {
    case DistributionKind::BreitWigner: return normalize(MassDistribution::breit_wigner(M, Gamma, mu0));
    case DistributionKind::Gaussian: return normalize(MassDistribution::gaussian(M, sigma, mu0));
    case DistributionKind::Tabulated: return normalize(load_tabulated_csv(table));
  }
  throw ConfigError("distribution: unknown kind");
}

TimeGrid GridSpec::build(double tau) const {
  if (spacing == GridSpacing::Log) return TimeGrid::log(tau, t_min, t_max, n_points, include_zero);
  return TimeGrid::linear(tau, t_max, n_points);
}

double RunConfig::gamma() const {
  if (v) return gamma_from_v(*v);
  if (p && dist) return gamma_from_p(dist->M(), *p);
  return 1.0;
}

XRule RunConfig::x_rule_for(PhaseModel model) const {
  const auto it = x_rule_overrides.find(model);
  return it == x_rule_overrides.end() ? x_rule : it->second;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, std::string> kv;
  std::vector<std::string> unknown;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!known_keys().count(key)) {
      unknown.push_back(key);
      continue;
    }
    if (!kv.emplace(key, value).second) throw ConfigError("duplicate key " + key);
    cfg.entries.emplace_back(key, value);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }

  auto has = [&](const std::string& k) { return kv.count(k) > 0; };
  auto real = [&](const std::string& k) { return parse_real(k, kv.at(k)); };
  auto any_with_prefix = [&](std::string_view prefix) {
    return std::any_of(kv.begin(), kv.end(), [&](const auto& e) { return e.first.starts_with(prefix); });
  };

  if (has("output_dir")) cfg.output_dir = kv.at("output_dir");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir: must not be empty");
  if (has("seed")) cfg.seed = parse_integer("seed", kv.at("seed"));
  if (has("quadrature.eps")) {
    cfg.eps = real("quadrature.eps");
    if (!(cfg.eps > 0.0 && cfg.eps < 0.1)) throw ConfigError("quadrature.eps: must lie in (0, 0.1)");
  }

  // Analyses.
  if (has("analyses.compare")) cfg.analyses.compare = parse_bool("analyses.compare", kv.at("analyses.compare"));
  if (has("analyses.transition")) {
    cfg.analyses.transition = parse_bool("analyses.transition", kv.at("analyses.transition"));
  }
  if (has("analyses.scan")) cfg.analyses.scan = parse_bool("analyses.scan", kv.at("analyses.scan"));
  if (has("analysis.window_min")) cfg.window.t_min = real("analysis.window_min");
  if (has("analysis.window_max")) cfg.window.t_max = real("analysis.window_max");
  if (has("analysis.transition_threshold")) {
    cfg.transition_threshold = real("analysis.transition_threshold");
    if (!(cfg.transition_threshold > 0.0)) throw ConfigError("analysis.transition_threshold: must be positive");
  }

  // Scan grid.
  if (cfg.analyses.scan) {
    for (const char* k : {"scan.m", "scan.p_par", "scan.v"}) {
      if (!has(k)) throw ConfigError(std::string(k) + ": required when analyses.scan = true");
    }
    cfg.scan.m = parse_real_list("scan.m", kv.at("scan.m"));
    cfg.scan.p_par = parse_real_list("scan.p_par", kv.at("scan.p_par"));
    cfg.scan.v = parse_real_list("scan.v", kv.at("scan.v"));
    if (cfg.scan.m.empty() || cfg.scan.p_par.empty() || cfg.scan.v.empty()) {
      throw ConfigError("scan: lists must not be empty");
    }
    for (double m : cfg.scan.m) {
      if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("scan.m: values must be positive");
    }
    for (double p : cfg.scan.p_par) {
      if (!std::isfinite(p)) throw ConfigError("scan.p_par: values must be finite");
    }
    for (double v : cfg.scan.v) {
      if (!(v >= 0.0 && v < 1.0)) throw ConfigError("scan.v: values must lie in [0, 1)");
    }
  } else if (any_with_prefix("scan.")) {
    cfg.warnings.push_back("scan.* keys ignored because analyses.scan is false");
  }

  const bool amplitude_keys = any_with_prefix("distribution.") || any_with_prefix("kinematics.") ||
                              any_with_prefix("smearing.") || any_with_prefix("velocity.") ||
                              has("phase_models");
  if (!amplitude_keys) {
    if (!cfg.analyses.scan) throw ConfigError("nothing to run: give a distribution or enable analyses.scan");
    cfg.analyses.compare = false;
    cfg.analyses.transition = false;
    return cfg;
  }

  // Distribution.
  DistributionSpec spec;
  if (has("distribution.kind")) spec.kind = parse_kind("distribution.kind", kv.at("distribution.kind"));
  if (spec.kind == DistributionKind::Tabulated) {
    if (!has("distribution.table")) throw ConfigError("distribution.table: required for tabulated densities");
    spec.table = kv.at("distribution.table");
  } else {
    if (!has("distribution.M")) throw ConfigError("distribution.M: required");
    spec.M = real("distribution.M");
    if (spec.kind == DistributionKind::BreitWigner) {
      if (!has("distribution.Gamma")) throw ConfigError("distribution.Gamma: required");
      spec.Gamma = real("distribution.Gamma");
    } else {
      if (!has("distribution.sigma")) throw ConfigError("distribution.sigma: required");
      spec.sigma = real("distribution.sigma");
    }
    if (has("distribution.mu0")) spec.mu0 = real("distribution.mu0");
  }
  try {
    cfg.dist = spec.build();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("distribution: ") + e.what());
  }
  cfg.distribution = spec;

  // Kinematics.
  if (has("kinematics.p") == has("kinematics.v")) {
    throw ConfigError("kinematics: give exactly one of kinematics.p and kinematics.v");
  }
  if (has("kinematics.p")) {
    const double p = real("kinematics.p");
    if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("kinematics.p: must be finite and >= 0");
    if (p > 0.0 && cfg.dist->untruncated()) {
      throw ConfigError("kinematics.p: a moving state needs a finite threshold distribution.mu0");
    }
    cfg.p = p;
    if (any_with_prefix("smearing.") || any_with_prefix("velocity.") || has("phase_models")) {
      cfg.warnings.push_back("smearing.*, velocity.* and phase_models only apply with kinematics.v");
    }
  } else {
    const double v = real("kinematics.v");
    if (!(v >= 0.0 && v < 1.0)) throw ConfigError("kinematics.v: must lie in [0, 1)");
    cfg.v = v;
    if (!has("smearing.sigma_p")) throw ConfigError("smearing.sigma_p: required with kinematics.v");
    if (has("smearing.shape") && lower(kv.at("smearing.shape")) != "gaussian") {
      throw ConfigError("smearing.shape: only gaussian is supported");
    }
    MomentumSmearing smear;
    smear.sigma_p = real("smearing.sigma_p");
    if (has("smearing.p_bar")) smear.p_bar = real("smearing.p_bar");
    if (!(smear.sigma_p > 0.0) || !std::isfinite(smear.sigma_p)) {
      throw ConfigError("smearing.sigma_p: must be positive");
    }
    if (!std::isfinite(smear.p_bar)) throw ConfigError("smearing.p_bar: must be finite");
    cfg.smearing = smear;

    if (has("phase_models")) {
      for (auto name : split_list(kv.at("phase_models"))) {
        try {
          const PhaseModel model = phase_model_from_string(lower(name));
          if (std::find(cfg.phase_models.begin(), cfg.phase_models.end(), model) == cfg.phase_models.end()) {
            cfg.phase_models.push_back(model);
          }
        } catch (const Error&) {
          throw ConfigError("phase_models: unknown model '" + std::string(name) + "'");
        }
      }
      if (cfg.phase_models.empty()) throw ConfigError("phase_models: list is empty");
    } else {
      cfg.phase_models = {PhaseModel::Exact};
    }

    const double x = has("velocity.x") ? real("velocity.x") : 0.0;
    if (has("velocity.x_rule")) cfg.x_rule = parse_x_rule("velocity.x_rule", kv.at("velocity.x_rule"), x);
    for (PhaseModel model : {PhaseModel::Exact, PhaseModel::CarloApprox, PhaseModel::CorrectedApprox}) {
      const std::string key = "velocity.x_rule." + std::string(to_string(model));
      if (has(key)) cfg.x_rule_overrides[model] = parse_x_rule(key, kv.at(key), x);
    }

    const RegimeCheck regime = check_regime(cfg.dist->Gamma(), smear.sigma_p, cfg.dist->M());
    if (!regime.satisfied()) {
      cfg.warnings.push_back(regime.message(cfg.dist->Gamma(), smear.sigma_p, cfg.dist->M()));
    }
  }

  // Grid.
  if (has("grid.t_max")) cfg.grid.t_max = real("grid.t_max");
  if (has("grid.n_points")) {
    const long long n = parse_integer("grid.n_points", kv.at("grid.n_points"));
    if (n < 2) throw ConfigError("grid.n_points: must be >= 2");
    cfg.grid.n_points = static_cast<std::size_t>(n);
  }
  if (has("grid.spacing")) {
    const std::string s = lower(kv.at("grid.spacing"));
    if (s == "linear") cfg.grid.spacing = GridSpacing::Linear;
    else if (s == "log") cfg.grid.spacing = GridSpacing::Log;
    else throw ConfigError("grid.spacing: expected linear or log");
  }
  if (has("grid.t_min")) cfg.grid.t_min = real("grid.t_min");
  if (has("grid.include_zero")) cfg.grid.include_zero = parse_bool("grid.include_zero", kv.at("grid.include_zero"));
  if (!(cfg.grid.t_max > 0.0 && cfg.grid.t_max <= 1e5)) throw ConfigError("grid.t_max: must lie in (0, 1e5]");
  if (cfg.grid.spacing == GridSpacing::Log && !(cfg.grid.t_min > 0.0 && cfg.grid.t_min < cfg.grid.t_max)) {
    throw ConfigError("grid.t_min: log grids need 0 < t_min < t_max");
  }

  if (cfg.analyses.compare) {
    const double first = cfg.grid.spacing == GridSpacing::Log && !cfg.grid.include_zero ? cfg.grid.t_min : 0.0;
    if (!(cfg.window.t_min >= first && cfg.window.t_min < cfg.window.t_max && cfg.window.t_max <= cfg.grid.t_max)) {
      throw ConfigError("analysis.window_min/window_max: window must lie inside the time grid");
    }
  }
  if (cfg.analyses.transition && cfg.grid.t_max < 100.0) {
    throw ConfigError("grid.t_max: transition analysis needs t_max >= 100");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace reldecay
