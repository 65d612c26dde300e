#pragma once

// Seeded verification suites, shared by the acceptance binary and the CLI.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fogus {

inline constexpr std::uint64_t default_seed = 1729;

struct VerifyOptions {
    std::uint64_t seed = default_seed;
    /// Overrides the number of random samples of every suite.
    std::optional<std::size_t> trials;
};

struct SuiteResult {
    int number = 0;
    std::string name;
    std::string title;
    bool passed = false;
    std::size_t samples = 0;
    double seconds = 0;
    double limit_seconds = 0;
    /// Ordered key/value facts for reports.
    std::vector<std::pair<std::string, std::string>> facts;
    std::vector<std::string> failures;
};

struct SuiteInfo {
    int number;
    const char* name;
    const char* title;
};

/// All suites, in order.
const std::vector<SuiteInfo>& suites();
/// Throws std::out_of_range for unknown names.
const SuiteInfo& suite_by_name(const std::string& name);

SuiteResult run_suite(int number, const VerifyOptions& options = {});
std::vector<SuiteResult> run_all(const VerifyOptions& options = {});

}  // namespace fogus
