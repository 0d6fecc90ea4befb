#pragma once
// The .strat text format: line-oriented, LF, `#` comments, tokens
// [A-Za-z0-9_]+. A file holds one complex with its filtration and any number
// of named perversities. Emission is canonical, so emit-then-parse is the
// identity on canonical form.

#include <map>
#include <string>

#include "stratum/perv.hpp"
#include "stratum/strat.hpp"

namespace stratum {

struct StratFile {
    Stratification strat;
    std::map<std::string, Perversity> perversities;
};

StratFile parse_strat_file(const std::string& text);

std::string emit_strat_file(const Stratification& strat,
                            const std::map<std::string, Perversity>& perversities = {});

// FNV-1a of the canonical emission; used for the deterministic report header.
std::string content_digest(const std::string& text);

} // namespace stratum
