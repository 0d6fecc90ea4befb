// Acceptance runner: one pass/fail line per criterion, tolerances pinned in
// the suites. The corpus oracle gate (criterion 11) runs before the suites
// that depend on derived expected values.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "stratum/verify.hpp"

int main() {
    using namespace stratum;
    struct Criterion {
        int number;
        std::string suite;
        std::string title;
        double budget_seconds;
    };
    const std::vector<Criterion> plan = {
        {11, "corpus-oracles", "corpus oracle gate (runs first)", 60},
        {1, "perversity-laws", "perversity algebra laws", 10},
        {2, "one-exceptional", "1-exceptional obstruction", 1},
        {3, "pi0-invariance", "pi0 invariance across coarsenings", 30},
        {4, "pinched-torus", "pinched torus facts", 5},
        {5, "cone-thresholds", "cone threshold probe", 60},
        {6, "coarsen-invariance", "coarsening invariance shadow", 120},
        {7, "exceptional-invariance", "exceptional-stratum invariance shadow", 60},
        {8, "example83", "example83 bookkeeping", 1},
        {9, "example86", "the example86 chain negative certificate", 10},
        {10, "two-cone", "two-cone probe", 60},
    };
    const unsigned seed = 20250808;
    bool all_pass = true;
    std::vector<std::string> summary(12);
    for (const auto& c : plan) {
        auto t0 = std::chrono::steady_clock::now();
        SuiteResult r = run_suite(c.suite, seed);
        auto t1 = std::chrono::steady_clock::now();
        double secs = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0;
        bool in_budget = secs < c.budget_seconds;
        bool ok = r.passed && in_budget;
        if (!ok) all_pass = false;
        std::string line = "criterion " + std::to_string(c.number) + ": " +
                           (ok ? "PASS" : "FAIL") + " - " + c.title + " [" + c.suite + ", " +
                           std::to_string(secs).substr(0, 5) + "s]";
        if (!in_budget) line += " (over the " + std::to_string((int)c.budget_seconds) + "s budget)";
        summary[c.number] = line;
        std::cout << line << "\n";
        if (!r.passed)
            for (const auto& l : r.lines) std::cout << l << "\n";
        if (c.number == 11 && !r.passed) {
            std::cout << "corpus oracle gate failed; aborting before the property suites\n";
            return 1;
        }
    }
    std::cout << "\nsummary (criterion order):\n";
    for (int i = 1; i <= 11; ++i)
        if (!summary[i].empty()) std::cout << summary[i] << "\n";
    return all_pass ? 0 : 1;
}
