#include "reldecay/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "reldecay/analysis.hpp"
#include "reldecay/csv.hpp"
#include "reldecay/error.hpp"

namespace reldecay {
namespace {

namespace fs = std::filesystem;

class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) {}

  void write(const std::string& name, const std::string& content) {
    std::ofstream f(root_ / name, std::ios::binary | std::ios::trunc);
    if (!f) throw std::ios_base::failure("cannot open " + (root_ / name).string());
    f << content;
    f.close();
    if (!f) throw std::ios_base::failure("write failed for " + (root_ / name).string());
    files_.push_back(name);
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path root_;
  std::vector<std::string> files_;
};

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

std::string plot_script(const std::vector<std::string>& series_files) {
  std::ostringstream py;
  py << "#!/usr/bin/env python3\n"
        "# Survival probabilities on log-log axes. Run from this directory.\n"
        "import csv\n"
        "import matplotlib\n"
        "matplotlib.use(\"Agg\")\n"
        "import matplotlib.pyplot as plt\n\n"
        "FILES = [";
  for (std::size_t i = 0; i < series_files.size(); ++i) py << (i ? ", " : "") << '"' << series_files[i] << '"';
  py << "]\n\n"
        "fig, ax = plt.subplots(figsize=(7, 5))\n"
        "for name in FILES:\n"
        "    xs, ys, label = [], [], name\n"
        "    with open(name, newline=\"\") as f:\n"
        "        for row in csv.DictReader(f):\n"
        "            t, p = float(row[\"t_over_tau\"]), float(row[\"P\"])\n"
        "            label = row[\"label\"]\n"
        "            if t > 0 and p > 0:\n"
        "                xs.append(t)\n"
        "                ys.append(p)\n"
        "    ax.loglog(xs, ys, label=label)\n"
        "ax.set_xlabel(\"t / tau\")\n"
        "ax.set_ylabel(\"P(t)\")\n"
        "ax.legend(fontsize=\"small\")\n"
        "fig.tight_layout()\n"
        "fig.savefig(\"survival.png\", dpi=150)\n";
  return py.str();
}

std::string engine_name(bool oracle) { return oracle ? "oracle" : "filon"; }

}  // namespace

void describe(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dist) {
    const MassDistribution& d = *cfg.dist;
    out << "distribution: M=" << csv::number(d.M()) << " Gamma=" << csv::number(d.Gamma())
        << " mu0=" << csv::number(d.mu0()) << " tau=" << csv::number(d.lifetime()) << '\n';
    if (cfg.p) out << "kinematics: p=" << csv::number(*cfg.p) << " gamma=" << csv::number(cfg.gamma()) << '\n';
    if (cfg.v) {
      out << "kinematics: v=" << csv::number(*cfg.v) << " gamma=" << csv::number(cfg.gamma())
          << " sigma_p=" << csv::number(cfg.smearing->sigma_p) << " p_bar=" << csv::number(cfg.smearing->p_bar)
          << '\n';
      for (PhaseModel m : cfg.phase_models) {
        out << "phase model: " << to_string(m) << " x=" << cfg.x_rule_for(m).describe() << '\n';
      }
    }
    out << "grid: t_max=" << csv::number(cfg.grid.t_max) << " tau, n=" << cfg.grid.n_points << ", "
        << (cfg.grid.spacing == GridSpacing::Log ? "log" : "linear") << '\n';
  }
  out << "analyses: compare=" << cfg.analyses.compare << " transition=" << cfg.analyses.transition
      << " scan=" << cfg.analyses.scan << '\n';
  if (cfg.analyses.scan) {
    out << "scan: " << cfg.scan.m.size() << " x " << cfg.scan.p_par.size() << " x " << cfg.scan.v.size()
        << " points\n";
  }
  for (const auto& w : cfg.warnings) out << "warning: " << w << '\n';
}

RunResult run(const RunConfig& cfg, const RunOptions& options, std::ostream& out, std::ostream& err) {
  RunResult result;
  result.output_dir = options.output_dir.value_or(cfg.output_dir);
  for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';

  std::error_code ec;
  fs::create_directories(result.output_dir, ec);
  if (ec) {
    err << "error: cannot create output directory " << result.output_dir << ": " << ec.message() << '\n';
    result.exit_code = kExitIo;
    return result;
  }
  OutputDir dir(result.output_dir);
  std::vector<std::string> series_files;
  std::vector<std::string> notes;
  bool wholly_failed = false;

  try {
    const bool amplitudes = cfg.has_amplitudes() && !options.scan_only;
    if (amplitudes) {
      const MassDistribution& dist = *cfg.dist;
      EvaluationOptions eval;
      eval.eps = cfg.eps;
      eval.threads = options.threads;
      eval.engine = options.oracle ? Engine::Oracle : Engine::Fast;
      const TimeGrid grid = cfg.grid.build(dist.lifetime());
      const double gamma = cfg.gamma();

      auto emit = [&](const std::string& name, const AmplitudeSeries& s) {
        dir.write(name, render([&](std::ostream& os) { csv::write_series(os, s); }));
        series_files.push_back(name);
        if (s.wholly_failed()) {
          wholly_failed = true;
          err << "error: every point of " << name << " failed\n";
        }
        for (const auto& w : s.warnings) notes.push_back(name + ": " + w);
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (!s.notes[i].empty()) notes.push_back(name + " t=" + csv::number(s.grid.points[i]) + ": " + s.notes[i]);
        }
      };

      const AmplitudeSeries rest = survival_rest(dist, grid, eval);
      emit("rest.csv", rest);

      const MomentumAmplitude rest_amp(dist, 0.0, eval);
      const RestProvider provider = [&](double t) { return rest_amp.probability(t); };
      std::vector<DeviationReport> compare;

      if (cfg.p) {
        const AmplitudeSeries mom = survival_momentum(dist, *cfg.p, grid, eval);
        emit("momentum.csv", mom);
        if (cfg.analyses.compare) compare.push_back(dilation_compare(mom, provider, gamma, cfg.window, options.threads));
      }
      if (cfg.v) {
        for (PhaseModel model : cfg.phase_models) {
          const AmplitudeSeries s =
              survival_velocity_frame(dist, *cfg.smearing, *cfg.v, cfg.x_rule_for(model), model, grid, eval);
          emit("velocity_" + std::string(to_string(model)) + ".csv", s);
          if (cfg.analyses.compare) compare.push_back(dilation_compare(s, provider, gamma, cfg.window, options.threads));
        }
      }
      if (cfg.analyses.compare) {
        dir.write("compare.csv", render([&](std::ostream& os) { csv::write_compare(os, compare); }));
        out << "dilation comparison (window " << csv::number(cfg.window.t_min) << ".." << csv::number(cfg.window.t_max)
            << " tau, gamma " << csv::number(gamma) << ")\n";
        for (const auto& r : compare) {
          out << "  " << r.label << ": dev_dilated=" << csv::number(r.dev_dilated)
              << " dev_contracted=" << csv::number(r.dev_contracted) << " verdict=" << to_string(r.verdict) << '\n';
        }
      }
      if (cfg.analyses.transition) {
        const TransitionReport tr = transition_time(rest, cfg.transition_threshold);
        dir.write("transition.csv", render([&](std::ostream& os) { csv::write_transition(os, {tr}); }));
        out << "late-time transition (threshold " << csv::number(tr.threshold) << "): t_star="
            << (tr.t_star ? csv::number(*tr.t_star) + " tau" : std::string("none"))
            << " log10(ratio_at_horizon)=" << csv::number(tr.log10_ratio_at_horizon) << '\n';
      }
    }

    if (cfg.analyses.scan) {
      const auto records = consistency_scan(cfg.scan.m, cfg.scan.p_par, cfg.scan.v, options.threads);
      dir.write("consistency_scan.csv", render([&](std::ostream& os) { csv::write_consistency(os, records); }));
      out << "consistency scan: " << records.size() << " records, max r_identity="
          << csv::number(records.front().r_identity) << '\n';
    }

    if (!series_files.empty()) dir.write("plot_survival.py", plot_script(series_files));

    std::ostringstream manifest;
    manifest << "# reldecay manifest\n[files]\n";
    for (const auto& f : dir.files()) manifest << f << '\n';
    manifest << "[parameters]\n";
    for (const auto& [k, v] : cfg.entries) manifest << k << " = " << v << '\n';
    manifest << "[derived]\n";
    if (cfg.dist) {
      manifest << "tau = " << csv::number(cfg.dist->lifetime()) << '\n';
      manifest << "gamma = " << csv::number(cfg.gamma()) << '\n';
    }
    manifest << "engine = " << engine_name(options.oracle) << '\n';
    if (!cfg.warnings.empty() || !notes.empty()) {
      manifest << "[warnings]\n";
      for (const auto& w : cfg.warnings) manifest << w << '\n';
      for (const auto& n : notes) manifest << n << '\n';
    }
    dir.write("manifest.txt", manifest.str());
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = kExitIo;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    result.exit_code = kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    result.exit_code = kExitNumerical;
  }
  result.files = dir.files();
  if (result.exit_code == kExitOk && wholly_failed) result.exit_code = kExitNumerical;
  if (!notes.empty()) err << notes.size() << " annotated points or warnings, see manifest.txt\n";
  return result;
}

}  // namespace reldecay
