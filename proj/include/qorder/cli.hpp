#pragma once

// The qorder command line: tree, enumerate, qmark, fourier, simulate and
// verify. run() takes the arguments without the program name and writes to
// the given streams, so tests drive it in-process.

#include "qorder/verify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qorder::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputDirEnv = "QORDER_OUTPUT_DIR";

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kVerificationFailed = 2 };

// Default caps, lifted by --unsafe-cap.
inline constexpr unsigned kTreeDepthCap = 24;
inline constexpr std::uint64_t kOrbitCountCap = std::uint64_t{1} << 24;
inline constexpr unsigned kPowerCap = 24;
inline constexpr std::uint64_t kWalkCap = 1'000'000;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Library checks followed by the checks of the command line itself.
const std::vector<Check>& full_registry();

}  // namespace qorder::cli
