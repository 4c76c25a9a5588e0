#ifndef WGS_VERIFY_HPP
#define WGS_VERIFY_HPP

// The acceptance suite: one entry per criterion, each independently runnable
// from the CLI (`wgs verify --suite N`). Tolerances are fixed here.

#include <string>
#include <vector>

namespace wgs {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

int criterion_count();
const char* criterion_name(int id); // 1-based
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids);

} // namespace wgs

#endif
