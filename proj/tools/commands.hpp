#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace kpzlab::cli {

const std::vector<std::string>& command_names();

// Runs one subcommand and returns its exit code: 0 on success, 1 when an
// invariant fails. Configuration problems surface as exceptions (config_error
// or kpzlab::error), which the caller maps to exit code 2.
int run_command(const std::string& name, const run_config& cfg, std::ostream& out, std::ostream& log);

}  // namespace kpzlab::cli
