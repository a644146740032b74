#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symfield {

// Cross-validation suites pitting the independent routes against each other:
// Monte Carlo against exact finite-N laws, the ODE hierarchy against closed
// forms, series against fixed points, analytic loop values against group
// Monte Carlo, and coverings against the walk. Each suite is a named list of
// checks with human-readable details.

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = true;
    double seconds = 0.0;
};

// Suite names in report order.
const std::vector<std::string>& suite_names();

// Run one named suite ("all" is not a suite; use run_all). Throws
// validation_error for an unknown name. Sampling checks honor workers;
// checks whose runtime budget is stated single-threaded ignore it.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int workers);

// Every suite in report order.
std::vector<SuiteResult> run_all(std::uint64_t seed, int workers);

}  // namespace symfield
