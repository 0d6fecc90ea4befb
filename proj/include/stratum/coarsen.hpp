#pragma once
// Coarsenings of one complex: stratum classification, simplicity, the S_e
// quotient with its two-step factorization, chains of simple coarsenings,
// and the theorem-hypothesis report.

#include <string>
#include <vector>

#include "stratum/perv.hpp"
#include "stratum/strat.hpp"

namespace stratum {

enum class StratumClass { RegularSource, Source, Fountain, Exceptional, OneExceptional };

std::string to_string(StratumClass c);

struct Coarsening {
    Stratification fine;   // S
    Stratification coarse; // T
    std::vector<int> stratum_map; // S-stratum -> T-stratum
    std::vector<StratumClass> classification;

    bool has_exceptional() const;
    bool has_one_exceptional() const;
    std::vector<int> exceptional_strata() const;
    bool is_identity() const;
};

Coarsening build_coarsening(const Stratification& s, const Stratification& t);

// Simplicity reads as depth <= 1 on the exceptional/fountain subposet; identity
// coarsenings have an empty subposet and count as simple.
bool is_simple(const Coarsening& c);
int exceptional_fountain_depth(const Coarsening& c);

// S_e: exceptional strata absorbed into the regular part, with the two
// coarsenings factoring iota.
struct SeDecomposition {
    Stratification se;
    Coarsening iota_e;     // S -> S_e
    Coarsening iota_sigma; // S_e -> T
};
SeDecomposition build_Se(const Coarsening& c);

// Chain of simple coarsenings composing to c. Identity gives length 0.
std::vector<Coarsening> simple_chain(const Coarsening& c);

struct LinkFactStatus {
    int stratum = -1;
    std::string status; // "Trivial" | "Nontrivial" | "Unknown"
    std::string reason;
};

struct TheoremReport {
    bool k_perversity = false;
    std::string k_certificate;
    bool below_top = false;
    bool exceptional_present = false;
    bool one_exceptional_present = false;
    std::vector<LinkFactStatus> link_facts;
    bool normal = false;
    bool connected = false;
    bool pre_thom_mather = false; // declared metadata
    bool theorem_A = false;
    bool theorem_B = false;
    bool theorem_81 = false;
    bool theorem_82 = false;
    std::string to_text(const Coarsening& c) const;
};

// Link-fact resolver is injected by the caller (the symbolic calculator in
// practice) so this module stays independent of it.
using LinkFactResolver = LinkFactStatus (*)(const Coarsening&, const Perversity&, int stratum);

TheoremReport theorem_hypothesis_report(const Coarsening& c, const Perversity& p,
                                        bool declared_pre_thom_mather,
                                        LinkFactResolver resolver);

} // namespace stratum
