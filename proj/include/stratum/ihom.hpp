#pragma once
// Allowability, intersection chain complexes over Z/Q/F_p with Smith-normal-
// form homology, pi0 and pi1 of the regular part, cone and two-cone threshold
// probes, and the Mayer-Vietoris exactness check.

#include <string>
#include <vector>

#include "stratum/homology.hpp"
#include "stratum/perv.hpp"
#include "stratum/strat.hpp"

namespace stratum {

struct AllowabilityTable {
    std::vector<int> singular; // singular stratum indices
    // carrier_dim[simplex][k] = d(sigma, singular[k]); -1 encodes "no face"
    std::vector<std::vector<int>> carrier_dim;
    std::vector<char> allowable; // per simplex id
    std::vector<char> full;      // per simplex id: every face allowable

    bool is_allowable(int simplex_id) const { return allowable[simplex_id] != 0; }
    bool is_full(int simplex_id) const { return full[simplex_id] != 0; }
};

AllowabilityTable allowability_table(const Stratification& strat, const Perversity& p);

// Chain complex of allowable chains with allowable boundaries, with its basis
// embedded in the simplicial chain coordinates of the underlying complex.
struct ICComplex {
    ComplexPtr complex;
    RingSpec ring;
    int top = -1;
    std::vector<IMat> embed;    // embed[k]: (#k-simplices) x (rank IC_k)
    std::vector<IMat> boundary; // boundary[k]: IC_{k-1} x IC_k, d.d = 0 asserted
};

ICComplex intersection_chain_complex(const Stratification& strat, const Perversity& p,
                                     RingSpec ring);
// IC of a sub-collection of simplices (columns restricted to the subcomplex);
// used by the Mayer-Vietoris machinery.
ICComplex intersection_chain_complex_on(const Stratification& strat, const Perversity& p,
                                        RingSpec ring, const std::vector<char>& keep_simplex);

HomologyResult ic_homology(const ICComplex& cc);

HomologyResult intersection_homology(const Stratification& strat, const Perversity& p,
                                     RingSpec ring);

// Independent oracle: IH Betti numbers over Q by pure rank arithmetic with
// Bareiss elimination; no kernel bases, no SNF.
std::vector<int> ih_betti_by_rank_oracle(const Stratification& strat, const Perversity& p);

// Re-express an IC complex inside a larger complex containing the same
// labeled simplices (e.g. the base of a cone inside the cone).
ICComplex transport_ic(const ICComplex& small, ComplexPtr big);

struct InducedMap {
    bool defined = false; // chain-level inclusion exists
    bool iso = false;
    bool epi = false;
};
// Induced map on homology in degree k for IC complexes over the same
// underlying complex with IC_a contained in IC_b.
InducedMap induced_homology_map(const ICComplex& a, const ICComplex& b, int k);
InducedMap induced_map_over_Q(const ICComplex& a, const ICComplex& b, int k);

// --------------------------------------------------------------------------

struct Pi0Result {
    int count = 0;
    std::vector<int> component_of_spine_vertex;
    std::vector<int> spine_vertex_to_simplex;
};
// Components of the regular spine; equals pi0^p by the regular-part surjection when p <= t-bar.
Pi0Result pi0_p(const Stratification& strat, const Perversity& p);

struct GroupPresentation {
    int generators = 0;
    std::vector<std::vector<int>> relators; // words over +/-(gen+1)
    int abelian_rank = 0;
    std::vector<long long> abelian_torsion;
    bool tietze_trivial = false; // greedy simplification emptied the presentation
};

struct Pi1Result {
    bool connected = false;
    std::vector<GroupPresentation> components;
};
// Edge-path presentation of pi1 of the regular spine, one per component;
// abelianization cross-checked against H1 of the spine component.
Pi1Result pi1_regular(const Stratification& strat);

// --------------------------------------------------------------------------

struct ConeProbeReport {
    ExtInt dual_apex;          // Dp(v)
    int observed_iso_through = -1;  // largest j with induced iso in degrees <= j
    int predicted_iso_through = -1; // calibrated threshold formula
    bool vanishing_ok = false; // IH_k(cone) = 0 for k > max(Dp(v), 0)
    bool epi_at_next = false;  // surjective one degree above the range
    bool matches = false;
    std::string detail;
};
// IH of the closed cone over the link versus IH of the link, compared
// through the inclusion of the base.
ConeProbeReport cone_threshold_probe(const Stratification& link_strat, const Perversity& p_link,
                                     ExtInt apex_value, RingSpec ring);

struct TwoConeProbeReport {
    ExtInt dual_corner; // Dp({u,v})
    bool k_perversity = false;
    bool bounds_ok = false;
    std::string certificate;
    int observed_iso_through = -1;
    int required_through = -1; // min(Dp({u,v}), top degree)
    bool matches = false;
    std::string detail;
};
// Refined versus coarse stratification of the cone on S^m * L: the refined
// side isolates the cone point, the coarse side keeps the full sphere-cone
// stratum. corner/disk values parametrize the perversity on both sides.
TwoConeProbeReport two_cone_probe(int m, const Stratification& link_strat,
                                  const Perversity& p_link, ExtInt corner_value,
                                  ExtInt ring_value, RingSpec ring);

struct MvReport {
    bool exact = false;
    std::string table; // per-degree rank bookkeeping
};
// Rank-level Mayer-Vietoris over Q: the homology of IC(U) + IC(V) must agree
// with IH(X) through the inclusion. U and V are given by facet lists and must
// cover the complex with nonempty intersection.
MvReport mv_exactness_check(const Stratification& strat, const Perversity& p,
                            const std::vector<std::vector<std::string>>& u_facets,
                            const std::vector<std::vector<std::string>>& v_facets);

} // namespace stratum
