// reldecay: survival probabilities of unstable states at rest and in motion.
//
//   reldecay run <config> [--output-dir DIR] [--threads N] [--oracle]
//   reldecay scan <config> [--output-dir DIR] [--threads N]
//   reldecay validate <config>

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "reldecay/config.hpp"
#include "reldecay/error.hpp"
#include "reldecay/runner.hpp"

namespace {

int execute(const std::string& path, reldecay::RunOptions options) {
  reldecay::RunConfig cfg;
  try {
    cfg = reldecay::load_config(path);
  } catch (const reldecay::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return reldecay::kExitConfig;
  }
  if (options.scan_only && !cfg.analyses.scan) {
    std::cerr << "config error: scan requires analyses.scan = true\n";
    return reldecay::kExitConfig;
  }
  const auto result = reldecay::run(cfg, options, std::cout, std::cerr);
  if (result.exit_code == reldecay::kExitOk) {
    std::cout << "wrote " << result.files.size() << " files to " << result.output_dir << '\n';
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Survival probabilities of unstable particles at rest and in motion"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  unsigned threads = 1;
  bool oracle = false;

  auto* run = app.add_subcommand("run", "Evaluate all series and analyses of a config");
  run->add_option("config", config_path, "Run configuration file")->required();
  run->add_option("--output-dir", output_dir, "Override output_dir");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  run->add_flag("--oracle", oracle, "Use the brute-force quadrature engine");

  auto* scan = app.add_subcommand("scan", "Run only the consistency scan");
  scan->add_option("config", config_path, "Run configuration file")->required();
  scan->add_option("--output-dir", output_dir, "Override output_dir");
  scan->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("config", config_path, "Run configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : reldecay::kExitConfig;
  }

  reldecay::RunOptions options;
  if (!output_dir.empty()) options.output_dir = output_dir;
  options.threads = threads;
  options.oracle = oracle;

  if (*validate) {
    try {
      const auto cfg = reldecay::load_config(config_path);
      reldecay::describe(cfg, std::cout);
      std::cout << "config ok\n";
      return reldecay::kExitOk;
    } catch (const reldecay::Error& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return reldecay::kExitConfig;
    }
  }
  if (*scan) options.scan_only = true;
  return execute(config_path, options);
}
