#include "hexmix/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace hexmix {

bool ExperimentReport::passed() const {
    for (const auto& v : verdicts)
        if (!v.second) return false;
    return true;
}

nlohmann::ordered_json to_json(const ExperimentReport& r, bool with_timing) {
    nlohmann::ordered_json j;
    j["experiment"] = r.name;
    j["config"] = r.config;
    j["seeds"] = r.seeds;
    j["stats"] = r.stats;
    nlohmann::ordered_json v = nlohmann::ordered_json::array();
    for (const auto& [what, ok] : r.verdicts) v.push_back({{"check", what}, {"pass", ok}});
    j["verdicts"] = v;
    j["pass"] = r.passed();
    if (!r.notes.empty()) j["notes"] = r.notes;
    j["replica_rows"] = r.rows.size();
    if (with_timing) j["wall_seconds"] = r.wall_seconds;
    return j;
}

void write_table(std::ostream& os, const ExperimentReport& r, bool with_timing) {
    std::size_t w = 8;
    for (const auto& [k, v] : r.stats.items()) w = std::max(w, k.size());
    for (const auto& [what, ok] : r.verdicts) w = std::max(w, what.size());
    os << r.name << '\n';
    for (const auto& [k, v] : r.stats.items()) os << "  " << std::left << std::setw(static_cast<int>(w)) << k << "  " << v.dump() << '\n';
    for (const auto& [what, ok] : r.verdicts)
        os << "  " << std::left << std::setw(static_cast<int>(w)) << what << "  " << (ok ? "PASS" : "FAIL") << '\n';
    for (const auto& n : r.notes) os << "  note: " << n << '\n';
    if (with_timing) {
        std::ostringstream t;
        t << std::fixed << std::setprecision(2) << r.wall_seconds << " s";
        os << "  " << std::left << std::setw(static_cast<int>(w)) << "wall" << "  " << t.str() << '\n';
    }
}

void write_csv(std::ostream& os, const ExperimentReport& r) {
    os << "# " << to_json(r, false)["config"].dump() << '\n';
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
    os << '\n';
    os << std::setprecision(17);
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
}

}  // namespace hexmix
