#pragma once

#include "amc/config.hpp"

namespace amc {

enum class RunMode { relax, propagate, validate };

/// Executes one run: builds the system, dispatches on mode, writes artifacts
/// into the output directory (every file prefixed with the resolved config),
/// and returns the process exit status (0 only on full success).
int run(const RunConfig& config, RunMode mode);

}  // namespace amc
