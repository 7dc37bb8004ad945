#pragma once

#include <ostream>

#include "ptlgi/io/config.hpp"

namespace ptlgi {
namespace io {

// each command validates nothing by itself; callers go through run_command,
// which validates the config first; each returns the process exit status
int cmd_k_curve(const RunConfig& cfg, std::ostream& out);
int cmd_surface(const RunConfig& cfg, std::ostream& out);
int cmd_bounds(const RunConfig& cfg, std::ostream& out);
int cmd_optimize(const RunConfig& cfg, std::ostream& out);
int cmd_lindblad_check(const RunConfig& cfg, std::ostream& out);
int cmd_shots(const RunConfig& cfg, std::ostream& out);
int cmd_bloch(const RunConfig& cfg, std::ostream& out);

// validates, then dispatches on cfg.command; may throw ConfigError
int run_command(const RunConfig& cfg, std::ostream& out);

// full process entry: resolves the output stream, runs the command, and
// maps exceptions to exit codes (1 config, 2 tolerance violation, 3 io)
int execute(const RunConfig& cfg);

}  // namespace io
}  // namespace ptlgi
