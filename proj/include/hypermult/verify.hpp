#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

// Built-in verification suites. Each runs a fixed grid of checks and counts
// failures; the first failing check is reported as "check @ grid point".

namespace hypermult::verify {

struct Options {
    std::uint64_t seed = 0;
    double tol = 1e-9;            ///< slack on inequality checks
    double ode_tol = 1e-10;       ///< integration tolerance for mode solves
    double perturb_ratio = 1.0;   ///< fault injection for the modes suite
};

struct SuiteResult {
    std::string suite;
    long checks = 0;
    long failures = 0;
    std::string first_failure;
    std::vector<std::pair<std::string, double>> metrics;  ///< grid sizes and extremes, in insertion order

    bool passed() const { return failures == 0; }
    void check(bool ok, const std::string& what);
    void metric(const std::string& name, double value) { metrics.emplace_back(name, value); }
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs one suite; when `details` is non-null the suite's grid is written to it as CSV.
SuiteResult run_suite(const std::string& name, const Options& opts, std::ostream* details = nullptr);

SuiteResult modes_suite(const Options& opts, std::ostream* details = nullptr);
SuiteResult ratios_suite(const Options& opts, std::ostream* details = nullptr);
SuiteResult kernel_suite(const Options& opts, std::ostream* details = nullptr);
SuiteResult nets_suite(const Options& opts, std::ostream* details = nullptr);
SuiteResult constants_suite(const Options& opts, std::ostream* details = nullptr);

struct NetInstance {
    double eps, radius, r;
    long n;
    std::uint64_t seed;
};

/// The 100 seeded ball instances checked by the nets suite.
std::vector<NetInstance> net_instances(std::uint64_t seed);

}  // namespace hypermult::verify
