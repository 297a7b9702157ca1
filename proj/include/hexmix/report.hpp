// Experiment reports: JSON for machines, an aligned table for people and
// per-replica CSV rows.
#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace hexmix {

struct ExperimentReport {
    std::string name;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<std::uint64_t> seeds;
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();
    std::vector<std::pair<std::string, bool>> verdicts;
    std::vector<std::string> notes;
    std::vector<std::string> columns;          // per-replica CSV header
    std::vector<std::vector<double>> rows;     // per-replica values
    double wall_seconds = 0;

    bool passed() const;
    void verdict(const std::string& what, bool ok) { verdicts.emplace_back(what, ok); }
};

// `with_timing` off gives output that depends only on (seed, config).
nlohmann::ordered_json to_json(const ExperimentReport& r, bool with_timing = true);
void write_table(std::ostream& os, const ExperimentReport& r, bool with_timing = true);
void write_csv(std::ostream& os, const ExperimentReport& r);

}  // namespace hexmix
