#pragma once

#include <cstdint>
#include <string>

#include "cli/config.hpp"

namespace ratelab::cli {

// Options resolved from the command line; *_given marks flags the user
// typed, which override the config file's [run] section.
struct CliOptions {
  std::string config_path;
  std::uint64_t seed = 20260822;
  std::string out_dir = "out";
  int jobs = 0;  // 0 = one worker per hardware thread
  bool seed_given = false;
  bool out_given = false;
  bool jobs_given = false;
};

// Effective run settings: defaults, then the [run] section, then explicit
// flags, then the RATELAB_JOBS environment variable for the worker count.
struct RunContext {
  Config config;
  std::uint64_t seed = 0;
  std::string out_dir;
  int jobs = 1;
};

RunContext make_context(const CliOptions& options);

int cmd_identity(const RunContext& ctx);
int cmd_verify(const RunContext& ctx);
int cmd_contract(const RunContext& ctx);
int cmd_entropy(const RunContext& ctx);
int cmd_report(const RunContext& ctx);

}  // namespace ratelab::cli
