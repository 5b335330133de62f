#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "ratelab/errors.hpp"

namespace {

void add_common_options(CLI::App* sub, ratelab::cli::CliOptions& options) {
  sub->add_option("--config", options.config_path, "Run configuration file");
  sub->add_option("--seed", options.seed, "Root random seed")->capture_default_str();
  sub->add_option("--out", options.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--jobs", options.jobs,
                  "Worker threads (0 = hardware; RATELAB_JOBS overrides)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification laboratory for posterior contraction bounds"};
  app.require_subcommand(1);

  ratelab::cli::CliOptions options;
  std::map<std::string, int (*)(const ratelab::cli::RunContext&)> dispatch;

  auto* identity =
      app.add_subcommand("identity-suite", "Recompute the divergence identity battery");
  dispatch["identity-suite"] = ratelab::cli::cmd_identity;
  auto* verify = app.add_subcommand("verify", "Run bound checks against simulation");
  dispatch["verify"] = ratelab::cli::cmd_verify;
  auto* contract = app.add_subcommand("contract", "Measure a posterior contraction curve");
  dispatch["contract"] = ratelab::cli::cmd_contract;
  auto* entropy = app.add_subcommand("entropy", "Covering and partition-constant conditions");
  dispatch["entropy"] = ratelab::cli::cmd_entropy;
  auto* report = app.add_subcommand("report", "Re-validate emitted records and summarize");
  dispatch["report"] = ratelab::cli::cmd_report;

  for (CLI::App* sub : {identity, verify, contract, entropy, report}) {
    add_common_options(sub, options);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  options.seed_given = sub->count("--seed") > 0;
  options.out_given = sub->count("--out") > 0;
  options.jobs_given = sub->count("--jobs") > 0;

  try {
    ratelab::cli::RunContext ctx = ratelab::cli::make_context(options);
    return dispatch.at(sub->get_name())(ctx);
  } catch (const ratelab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ratelab::RegistryMiss& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ratelab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
