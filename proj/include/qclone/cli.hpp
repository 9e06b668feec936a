#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qclone/bounds.hpp"
#include "qclone/verify.hpp"

namespace qclone::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

// Relaxed equal-error curves x_equal_min_simplified(z, n) on `points` evenly
// spaced z in [0, 1], rows ordered by z then n.
std::vector<BoundSample> figure1_rows(const std::vector<int>& n_list, int points);

// Named verification profiles: quick, full, mutant-scale, mutant-drop-cross.
verify::SuiteConfig suite_profile(const std::string& name, std::uint64_t seed);

/// Runs one `qclone` invocation. args[0] is the program name. env_seed
/// stands in for the QCLONE_SEED environment variable.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed);

// Same, reading QCLONE_SEED from the process environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qclone::cli
