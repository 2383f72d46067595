#pragma once

#include "run_spec.hpp"

#include <iosfwd>

namespace chiralmag::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolver = 3;

/// Runs one command, writing its artifacts and manifest.txt under spec.out.
/// Returns the exit code; library errors propagate.
int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parsing, dispatch and error-to-exit-code mapping.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Loads a field from a checkpoint (by magic) or a CSV dump.
RealField load_field(const std::filesystem::path& path);

}  // namespace chiralmag::cli
