#ifndef SKDV_RUNNER_HPP
#define SKDV_RUNNER_HPP

#include <iosfwd>

#include "skdv/config.hpp"

namespace skdv {

// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitBlowup = 3;
inline constexpr int kExitInternalError = 4;

/// Execute the configured subcommand: emit data files and a run manifest
/// into cfg.out_dir, report progress on `out`, errors on `err`. Partial
/// outputs are removed on failure. Returns the exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace skdv

#endif
