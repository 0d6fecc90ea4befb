#pragma once
// Verification suites shared by the CLI `verify` command and the acceptance
// runner. Each suite prints deterministic lines (fixed seeds echoed) and
// returns a verdict.

#include <string>
#include <vector>

#include "stratum/coarsen.hpp"

namespace stratum {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string& what);
    void note(const std::string& what) { lines.push_back("  " + what); }
    std::string to_text() const;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, unsigned seed);

// Exceptional-link fact resolver backed by the symbolic calculator: the
// sphere-link cone branch for simplex-boundary links, the cone-formula threshold, and the
// the regular-part surjection surjection from the regular part.
LinkFactStatus resolve_link_fact(const Coarsening& c, const Perversity& p, int stratum);

} // namespace stratum
