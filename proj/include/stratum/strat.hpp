#pragma once
// Filtrations of a complex by closed subcomplexes: derived strata, the
// closure poset, stratification constructors, links with their induced
// filtration, the regular-part spine, and CS-set diagnostics.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stratum/simplex.hpp"

namespace stratum {

struct Stratum {
    std::string id;
    int formal_dim = 0;
    int codim = 0;
    bool regular = false;
    std::vector<int> carrier_simplices; // simplex ids, sorted
};

struct StrataPoset {
    std::vector<std::vector<char>> leq; // leq[a][b]: a <= b in closure order
    int depth = 0;
    // pairs S < Q with dim S >= dim Q (reported, not fatal)
    std::vector<std::pair<int, int>> dimension_anomalies;
};

class Stratification {
public:
    Stratification() = default;

    const SimplicialComplex& complex() const { return *complex_; }
    ComplexPtr complex_ptr() const { return complex_; }
    int formal_dim() const { return formal_dim_; }
    const std::vector<Stratum>& strata() const { return strata_; }
    const StrataPoset& poset() const { return poset_; }

    int carrier_index(const Simplex& s) const;
    int carrier_index_by_id(int simplex_id) const { return carrier_[simplex_id]; }
    int stratum_of(const Simplex& s) const;
    int stratum_of_id(int simplex_id) const { return stratum_of_[simplex_id]; }
    int stratum_by_name(const std::string& id) const; // -1 if absent

    std::vector<int> singular_strata() const;
    bool has_singular() const;
    int depth() const { return poset_.depth; }

    // facets of the skeleton subcomplex X_i
    std::vector<Simplex> skeleton_facets(int i) const;

    friend Stratification build_from_carriers(ComplexPtr complex, int formal_dim,
                                              std::vector<int> carriers);

private:
    ComplexPtr complex_;
    int formal_dim_ = 0;
    std::vector<int> carrier_;
    std::vector<Stratum> strata_;
    std::vector<int> stratum_of_;
    StrataPoset poset_;
};

// Core builder: carriers per simplex (index of the first skeleton containing
// it). Validates face-monotonicity and a nonempty regular part.
Stratification build_from_carriers(ComplexPtr complex, int formal_dim,
                                   std::vector<int> carriers);

// Skeleta given as facet lists per index; unlisted indices repeat the
// previous skeleton. Listed facets must be simplices of the complex and the
// listed subcomplexes must nest.
Stratification build_stratification(ComplexPtr complex, int formal_dim,
                                    const std::map<int, std::vector<std::vector<std::string>>>& skeleton_facets);

Stratification trivial_stratification(ComplexPtr complex, int formal_dim);

// True (with the stratum merge map S -> S^iota) when every T-stratum is a
// union of S-strata and codim S^iota <= codim S.
std::optional<std::vector<int>> is_stratified_coarsening(const Stratification& s,
                                                         const Stratification& t);

enum class RestrictionMode { ClosedSubcomplex, OpenComplement };

// Closed mode: restrict skeleta to the subcomplex spanned by the given
// facets. Open mode: model X minus that subcomplex by its spine in Sd(X).
Stratification induced_stratification(const Stratification& strat,
                                      const std::vector<std::vector<std::string>>& facets,
                                      RestrictionMode mode);

Stratification cone_stratification(const Stratification& base, const std::string& apex);

// Bottom stratum S^m (boundary of the (m+1)-simplex with fresh labels),
// then each X-stratum shifted by m+1.
Stratification join_sphere_stratification(int m, const Stratification& base,
                                          const std::string& sphere_prefix = "sph");

Stratification point_refinement(const Stratification& strat, const std::string& vertex_label);

// Link of a carrier simplex of a singular stratum, with the induced
// filtration L_j = Lk(s) cap X_{j + dim s + 1}. The filtration can be
// undefined (link material below the bottom level) for carrier simplices of
// dimension lower than their stratum; then only the complex is returned.
struct StratumLink {
    SimplicialComplex link;
    std::optional<Stratification> stratification;
    // link stratum index -> ambient stratum index of the cone-direction product
    std::vector<int> ambient_stratum;
    std::string note;
};
StratumLink stratum_link(const Stratification& strat, const Simplex& s);

// Full subcomplex of Sd(X) spanned by barycenters of regular-carrier
// simplices; stands in for X minus Sigma.
struct Spine {
    SimplicialComplex complex;
    std::vector<int> vertex_to_simplex; // spine vertex -> simplex id in X
    int components = 0;
    std::vector<int> component_of_vertex;
};
Spine regular_spine(const Stratification& strat);

// Brute-force pi0 of the regular part: union-find of regular simplices
// joined when they share a coface. Oracle for the spine's component count.
int pi0_regular_by_open_stars(const Stratification& strat);

struct CsDiagnostics {
    bool frontier_ok = true;
    std::vector<std::string> frontier_violations;
    bool link_consistent = true;
    std::vector<std::string> link_certificates;
    bool normal = true;
    std::vector<std::string> normality_notes;
    std::vector<std::string> codim1_strata;
    bool component_check_ok = true;
    std::vector<std::string> component_notes;

    bool cs_candidate() const { return frontier_ok && link_consistent; }
    std::string to_text() const;
};
CsDiagnostics cs_diagnostics(const Stratification& strat);

} // namespace stratum
