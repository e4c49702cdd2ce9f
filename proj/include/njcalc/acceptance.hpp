#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace njcalc {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

struct AcceptanceReport {
    std::uint64_t seed;
    std::vector<CriterionResult> results;
    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

/// Runs the acceptance criteria (filtered by substring when only != "").
/// All randomness derives from the seed; the report is byte-stable across
/// runs with equal seed and filter.
AcceptanceReport run_acceptance(std::uint64_t seed, const std::string& only = "");

/// One line per criterion; machine-readable JSON lines when json_lines.
void print_report(const AcceptanceReport& rep, std::ostream& os, bool json_lines);

}  // namespace njcalc
