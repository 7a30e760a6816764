#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracwave {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Run the full acceptance battery (closed forms, cross-path agreement,
/// solver oracles, probability checks, figure-data features). Each entry is
/// independent; a progress stream, when given, receives one line per check.
std::vector<CriterionResult> run_acceptance(std::ostream* progress = nullptr);

/// Writes one pass/fail line per criterion; returns true when all pass.
bool print_acceptance_table(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace fracwave
