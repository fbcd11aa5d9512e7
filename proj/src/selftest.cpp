#include "periods/selftest.hpp"

#include <ostream>

namespace periods {

std::vector<CriterionResult> run_acceptance(uint64_t seed) {
    (void)seed;
    return {};
}

bool print_acceptance_table(std::ostream& os, const std::vector<CriterionResult>& rs) {
    bool all = true;
    for (const auto& r : rs) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) os << "  (" << r.detail << ")";
        os << "\n";
        all = all && r.pass;
    }
    return all;
}

}  // namespace periods
