#pragma once

#include <ostream>

#include "specband/config.hpp"

namespace specband {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitAssertion = 2;
inline constexpr int kExitDefect = 3;
inline constexpr int kExitRuntime = 4;

struct RunOptions {
  bool force = false;
  int threads = 1;
};

// Runs the configured command, writing <output_dir>/<command>_<name>.{csv,json}; returns the exit status.
int run(const RunConfig& config, const RunOptions& options, std::ostream& out, std::ostream& err);

// Thread count from SPECBAND_THREADS, default 1.
int threads_from_env();

}  // namespace specband
