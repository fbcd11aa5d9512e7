#ifndef PERIODS_SELFTEST_HPP
#define PERIODS_SELFTEST_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace periods {

struct CriterionResult {
    std::string name;
    bool pass;
    std::string detail;
};

// Full acceptance suite (property checks at desk scale for p = 3 and p = 5).
// Deterministic for a fixed seed.
std::vector<CriterionResult> run_acceptance(uint64_t seed);

// Prints one pass/fail line per criterion; returns true when all pass.
bool print_acceptance_table(std::ostream& os, const std::vector<CriterionResult>& rs);

}  // namespace periods

#endif
