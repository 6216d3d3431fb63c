#pragma once

// Invariant suites behind `acleggett verify`. Each check reports the worst
// residual it saw and the threshold it was held to.

#include <cstdint>
#include <string>
#include <vector>

#include "acleggett/evolution.hpp"

namespace acleggett {

struct CheckResult {
    std::string suite;
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
    /// Reported but never counted as a failure.
    bool informational = false;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed = kDefaultSeed);

std::vector<CheckResult> run_all_suites(std::uint64_t seed = kDefaultSeed);

}  // namespace acleggett
