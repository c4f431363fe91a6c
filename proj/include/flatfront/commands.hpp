#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flatfront/config.hpp"

namespace flatfront {

enum class Command { trace, classify, invariants, mesh, verify };

Command parse_command(const std::string& name);
const char* to_string(Command c);

struct CommandResult {
    int exit_code = 0;
    std::vector<std::string> files;
};

/// Runs one subcommand and writes its files into cfg.out_dir (created if missing).
/// Errors propagate as exceptions; exit_code is 3 only for a verify run with failing checks.
CommandResult run_command(Command cmd, const JobConfig& cfg, std::ostream& log);

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace flatfront
