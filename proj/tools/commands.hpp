#ifndef GCLAB_COMMANDS_HPP
#define GCLAB_COMMANDS_HPP

#include <string>

#include "gclab/config.hpp"

namespace gclab::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kPass = 0, kCheckFailure = 1, kConfigError = 2, kNumericalFailure = 3 };

struct CommandResult {
    int exit_code = kPass;
    nlohmann::json summary;
    std::string out_dir;
};

/// Overrides applied on top of the config file (CLI flags).
struct Overrides {
    std::string out_dir;       // empty: keep config value
    std::uint64_t seed = 0;
    bool has_seed = false;
    int threads = -1;          // -1: keep config value
};

RunConfig apply_overrides(RunConfig cfg, const Overrides& ov);

CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_oracle(const RunConfig& cfg);
CommandResult cmd_scgf(const RunConfig& cfg);
CommandResult cmd_rate(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

/// Dispatch by name; catches domain errors and maps them to exit codes.
int run_command(const std::string& name, const std::string& config_path, const Overrides& ov);

}  // namespace gclab::cli

#endif
