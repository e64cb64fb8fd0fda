#pragma once

#include "philoop/report.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace philoop {

/// Bad combination of suite options, such as a Novikov algebra given to the
/// affine suite. Reported by the command line as a usage error.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Options of one verification run. Unset optionals mean "the suite's own
/// default", which for p and the algebra is a fixed matrix of cases.
struct SuiteConfig {
    std::string suite = "all";
    std::optional<std::string> p;
    std::optional<std::string> algebra;
    std::optional<int> M;
    int samples = 50;
    std::uint64_t seed = 0;
    std::optional<int> window;
    int precision = 32;
    std::optional<std::string> level;
    int degree = 6;
};

/// Names accepted as SuiteConfig::suite.
const std::vector<std::string> &suite_names();

struct SuiteResult {
    std::string suite;
    Report report;
    /// Extra top-level report fields, such as the Virasoro sign convention.
    nlohmann::ordered_json extras = nlohmann::ordered_json::object();

    bool passed() const { return report.passed(); }
    /// {suite, config, extras..., summary, checks sorted by name}.
    nlohmann::ordered_json to_json(const SuiteConfig &cfg) const;
    /// One line per check, witnesses for failures, then a summary line.
    std::string to_text() const;
};

/// Runs every check of the named suite. Throws ParseError for malformed p,
/// level, or algebra input and UsageError for invalid option combinations;
/// precision shortfalls become checks with status error.
SuiteResult run_suite(const SuiteConfig &cfg);

nlohmann::ordered_json config_json(const SuiteConfig &cfg);

} // namespace philoop
