#pragma once
// The example corpus: triangulated spaces, their named stratifications and
// coarsening pairs, declared metadata, and expected results with provenance
// tags. Symbolic entries live in the calculator's atom registry.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stratum/strat.hpp"

namespace stratum {

struct ExpectedResult {
    std::string what;
    std::string tag;    // "recorded" | "definitional" | "derived"
    std::string oracle; // oracle name for DERIVED results
    std::function<bool(std::string& detail)> check;
};

struct CorpusEntry {
    std::string name;
    std::string description;
    std::map<std::string, Stratification> stratifications;
    std::vector<std::pair<std::string, std::string>> coarsening_pairs; // (fine, coarse)
    bool declared_normal = false;
    bool declared_connected = false;
    bool declared_pre_thom_mather = false;
    bool symbolic_only = false;
    std::vector<ExpectedResult> expected;

    const Stratification& strat(const std::string& key) const;
};

const std::map<std::string, CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);
std::vector<std::string> corpus_names();

// Frequently used raw complexes.
SimplicialComplex make_torus7();
SimplicialComplex make_pinched_torus(); // icosahedron with two antipodal vertices identified
SimplicialComplex make_rp2_6();

} // namespace stratum
