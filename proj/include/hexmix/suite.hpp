// The primary verification battery: thirteen criteria, each with its own
// tolerance and wall-clock budget.
#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace hexmix {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;          // the substantive checks
    std::string summary;        // one line of key numbers
    double seconds = 0;
    double budget = 0;          // seconds
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    bool within_budget() const { return seconds < budget; }
    bool ok() const { return pass && within_budget(); }
};

struct SuiteOptions {
    std::uint64_t seed = 7;
    // Reduced sample sizes for plumbing checks; verdicts keep their
    // thresholds but are not meaningful at this scale.
    bool smoke = false;
    std::vector<int> only;  // criterion ids; empty means all
    std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_primary_suite(const SuiteOptions& opt);

// "[PASS] 4 CFTP exactness: ... (12.3 s / 120 s)"
std::string result_line(const CriterionResult& r);

}  // namespace hexmix
