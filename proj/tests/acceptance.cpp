// Acceptance suite: every criterion at its pinned tolerance, one line each.
// With arguments, runs the named subset (ids).

#include "wgs/verify.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
    std::vector<int> ids;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    } else {
        for (int i = 1; i <= wgs::criterion_count(); ++i) ids.push_back(i);
    }
    bool all = true;
    double total = 0.0;
    for (int id : ids) {
        auto r = wgs::run_criterion(id);
        all &= r.pass;
        total += r.seconds;
        std::printf("[%s] %2d %-28s (%7.2f s)  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s: %zu criteria, %.1f s total\n", all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                ids.size(), total);
    return all ? 0 : 1;
}
