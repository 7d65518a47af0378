#pragma once

// The acceptance suite: one numbered criterion per desk-checkable claim,
// runnable from the CLI (`verify-all`) and from the dedicated test binary.

#include <string>
#include <vector>

namespace mzv {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;   // short diagnostic, filled on failure or summary
    double seconds = 0;
};

// level selects which criteria run:
//   "quick"        - every criterion except the long-running stretch parts
//                    (criterion 8, and the nine-point part of criterion 9)
//   "stretch-only" - only those stretch parts
//   "full"         - everything
// Throws std::invalid_argument on an unknown level.
std::vector<CriterionResult> run_acceptance(const std::string& level);

}  // namespace mzv
