#include "stratum/coarsen.hpp"

#include <algorithm>
#include <set>

namespace stratum {

std::string to_string(StratumClass c) {
    switch (c) {
        case StratumClass::RegularSource: return "RegularSource";
        case StratumClass::Source: return "Source";
        case StratumClass::Fountain: return "Fountain";
        case StratumClass::Exceptional: return "Exceptional";
        case StratumClass::OneExceptional: return "OneExceptional";
    }
    return "?";
}

bool Coarsening::has_exceptional() const {
    for (auto c : classification)
        if (c == StratumClass::Exceptional || c == StratumClass::OneExceptional) return true;
    return false;
}

bool Coarsening::has_one_exceptional() const {
    for (auto c : classification)
        if (c == StratumClass::OneExceptional) return true;
    return false;
}

std::vector<int> Coarsening::exceptional_strata() const {
    std::vector<int> out;
    for (size_t i = 0; i < classification.size(); ++i)
        if (classification[i] == StratumClass::Exceptional ||
            classification[i] == StratumClass::OneExceptional)
            out.push_back(static_cast<int>(i));
    return out;
}

bool Coarsening::is_identity() const {
    if (fine.strata().size() != coarse.strata().size()) return false;
    for (size_t i = 0; i < fine.strata().size(); ++i)
        if (fine.strata()[i].carrier_simplices != coarse.strata()[stratum_map[i]].carrier_simplices)
            return false;
    return true;
}

Coarsening build_coarsening(const Stratification& s, const Stratification& t) {
    auto map = is_stratified_coarsening(s, t);
    if (!map) fail("NotACoarsening", "a T-stratum is not a union of S-strata (or codim grows)");
    Coarsening c;
    c.fine = s;
    c.coarse = t;
    c.stratum_map = *map;
    c.classification.resize(s.strata().size());
    for (size_t i = 0; i < s.strata().size(); ++i) {
        const Stratum& fs = s.strata()[i];
        const Stratum& ts = t.strata()[c.stratum_map[i]];
        if (fs.regular) {
            c.classification[i] = StratumClass::RegularSource;
        } else if (ts.regular) {
            c.classification[i] = fs.codim == 1 ? StratumClass::OneExceptional
                                                : StratumClass::Exceptional;
        } else if (fs.formal_dim == ts.formal_dim) {
            c.classification[i] = StratumClass::Source;
        } else {
            c.classification[i] = StratumClass::Fountain;
        }
    }
    // every T-stratum admits a source stratum
    for (size_t j = 0; j < t.strata().size(); ++j) {
        bool has_source = false;
        for (size_t i = 0; i < s.strata().size(); ++i)
            if (c.stratum_map[i] == static_cast<int>(j) &&
                s.strata()[i].formal_dim == t.strata()[j].formal_dim)
                has_source = true;
        if (!has_source)
            fail("NotACoarsening", "T-stratum " + t.strata()[j].id + " has no source stratum");
    }
    return c;
}

int exceptional_fountain_depth(const Coarsening& c) {
    std::vector<int> v;
    for (size_t i = 0; i < c.classification.size(); ++i)
        if (c.classification[i] == StratumClass::Exceptional ||
            c.classification[i] == StratumClass::OneExceptional ||
            c.classification[i] == StratumClass::Fountain)
            v.push_back(static_cast<int>(i));
    // longest chain in the induced subposet (strata sorted by dimension)
    int depth = 0;
    std::vector<int> chain(v.size(), 0);
    for (size_t b = 0; b < v.size(); ++b) {
        for (size_t a = 0; a < b; ++a)
            if (c.fine.poset().leq[v[a]][v[b]] && !c.fine.poset().leq[v[b]][v[a]])
                chain[b] = std::max(chain[b], chain[a] + 1);
        depth = std::max(depth, chain[b]);
    }
    return depth;
}

bool is_simple(const Coarsening& c) { return exceptional_fountain_depth(c) <= 1; }

SeDecomposition build_Se(const Coarsening& c) {
    const Stratification& s = c.fine;
    int n = s.formal_dim();
    // exceptional closure purity: strata below an exceptional stratum are exceptional
    for (size_t a = 0; a < s.strata().size(); ++a) {
        bool a_exc = c.classification[a] == StratumClass::Exceptional ||
                     c.classification[a] == StratumClass::OneExceptional;
        if (!a_exc || s.strata()[a].regular) continue;
        for (size_t b = 0; b < s.strata().size(); ++b) {
            if (a == b || s.strata()[b].regular) continue;
            bool b_exc = c.classification[b] == StratumClass::Exceptional ||
                         c.classification[b] == StratumClass::OneExceptional;
            if (s.poset().leq[b][a] && !b_exc)
                fail("SkeletonNotClosed", "non-exceptional stratum " + s.strata()[b].id +
                                              " lies below exceptional " + s.strata()[a].id +
                                              "; input is not a valid coarsening");
        }
    }
    std::vector<int> carriers(s.complex().simplices().size(), n);
    for (size_t i = 0; i < s.strata().size(); ++i) {
        bool keep_singular = !s.strata()[i].regular &&
                             c.classification[i] != StratumClass::Exceptional &&
                             c.classification[i] != StratumClass::OneExceptional;
        if (keep_singular)
            for (int id : s.strata()[i].carrier_simplices) carriers[id] = s.strata()[i].formal_dim;
    }
    // face-closedness of the surviving skeleta certifies the input
    Stratification se;
    try {
        se = build_from_carriers(s.complex_ptr(), n, std::move(carriers));
    } catch (const Error& e) {
        fail("SkeletonNotClosed", std::string("absorbing exceptional strata broke closedness: ") + e.what());
    }
    SeDecomposition out;
    out.iota_e = build_coarsening(s, se);
    out.iota_sigma = build_coarsening(se, c.coarse);
    out.se = std::move(se);
    // factorization properties: (i) singular source/fountain strata survive as
    // source strata of iota_e, (ii) iota_sigma has no exceptional strata
    for (size_t i = 0; i < s.strata().size(); ++i) {
        if (c.classification[i] == StratumClass::Source ||
            c.classification[i] == StratumClass::Fountain) {
            if (out.iota_e.classification[i] != StratumClass::Source)
                fail("SkeletonNotClosed", "stratum " + s.strata()[i].id +
                                              " did not become a source stratum in S_e");
        }
    }
    if (out.iota_sigma.has_exceptional())
        fail("SkeletonNotClosed", "S_e -> T still has exceptional strata");
    return out;
}

std::vector<Coarsening> simple_chain(const Coarsening& c) {
    std::vector<Coarsening> chain;
    if (c.is_identity()) return chain;
    Stratification cur = c.fine;
    Coarsening cur_c = c;
    int guard = static_cast<int>(c.fine.strata().size()) + 2;
    while (!is_simple(cur_c) && guard-- > 0) {
        // non-maximal strata of the exceptional/fountain subposet, lowest level first
        std::vector<int> v;
        for (size_t i = 0; i < cur_c.classification.size(); ++i)
            if (cur_c.classification[i] == StratumClass::Exceptional ||
                cur_c.classification[i] == StratumClass::OneExceptional ||
                cur_c.classification[i] == StratumClass::Fountain)
                v.push_back(static_cast<int>(i));
        int promote_level = -1;
        int target_t = -1;
        for (int a : v) {
            bool below = false;
            for (int b : v)
                if (a != b && cur.poset().leq[a][b] && !cur.poset().leq[b][a]) below = true;
            if (!below) continue;
            if (promote_level < 0 || cur.strata()[a].formal_dim < promote_level) {
                promote_level = cur.strata()[a].formal_dim;
                target_t = cur_c.stratum_map[a];
            }
        }
        if (promote_level < 0)
            fail("ChainFailure", "no mergeable stratum found while chain is not simple");
        // promote the non-maximal V-strata at that level over the chosen T-stratum
        std::vector<int> carriers(cur.complex().simplices().size());
        for (size_t i = 0; i < carriers.size(); ++i)
            carriers[i] = cur.carrier_index_by_id(static_cast<int>(i));
        bool promoted_any = false;
        for (int a : v) {
            if (cur.strata()[a].formal_dim != promote_level || cur_c.stratum_map[a] != target_t)
                continue;
            bool below = false;
            for (int b : v)
                if (a != b && cur.poset().leq[a][b] && !cur.poset().leq[b][a]) below = true;
            if (!below) continue;
            // next carrier level above: smallest level > promote_level among
            // cofaces of the stratum's carriers
            int next_level = cur.formal_dim();
            for (int id : cur.strata()[a].carrier_simplices) {
                for (size_t j = 0; j < cur.complex().simplices().size(); ++j) {
                    if (cur.complex().simplices()[id].is_face_of(cur.complex().simplices()[j]) &&
                        carriers[j] > promote_level)
                        next_level = std::min(next_level, carriers[j]);
                }
            }
            for (int id : cur.strata()[a].carrier_simplices) carriers[id] = next_level;
            promoted_any = true;
        }
        if (!promoted_any) fail("ChainFailure", "promotion step made no progress");
        Stratification next;
        try {
            next = build_from_carriers(cur.complex_ptr(), cur.formal_dim(), std::move(carriers));
        } catch (const Error& e) {
            fail("ChainFailure", std::string("intermediate stratification invalid: ") + e.what());
        }
        Coarsening step;
        try {
            step = build_coarsening(cur, next);
        } catch (const Error& e) {
            fail("ChainFailure", std::string("promotion step is not a coarsening: ") + e.what());
        }
        if (!is_simple(step)) fail("ChainFailure", "promotion step is not simple");
        chain.push_back(step);
        cur = next;
        try {
            cur_c = build_coarsening(cur, c.coarse);
        } catch (const Error& e) {
            fail("ChainFailure", std::string("remainder is not a coarsening: ") + e.what());
        }
    }
    if (guard <= 0) fail("ChainFailure", "merge loop did not terminate");
    if (!cur_c.is_identity()) chain.push_back(cur_c);
    // composition must reproduce the original stratum map
    for (size_t i = 0; i < c.fine.strata().size(); ++i) {
        int carrier = c.fine.strata()[i].carrier_simplices[0];
        int expect = c.stratum_map[i];
        if (c.coarse.stratum_of_id(carrier) != expect)
            fail("ChainFailure", "composed chain disagrees with the original map");
    }
    return chain;
}

std::string TheoremReport::to_text(const Coarsening& c) const {
    std::string out;
    out += std::string("K-perversity: ") + (k_perversity ? "yes" : "no");
    if (!k_perversity) out += " (" + k_certificate + ")";
    out += "\n";
    out += std::string("p <= t-bar: ") + (below_top ? "yes" : "no") + "\n";
    out += std::string("exceptional strata: ") + (exceptional_present ? "present" : "none") + "\n";
    out += std::string("1-exceptional strata: ") + (one_exceptional_present ? "present" : "none") + "\n";
    for (const auto& lf : link_facts)
        out += "  link of " + c.fine.strata()[lf.stratum].id + ": pi1(cone) " + lf.status +
               (lf.reason.empty() ? "" : " [" + lf.reason + "]") + "\n";
    out += std::string("normal: ") + (normal ? "yes" : "no") + "\n";
    out += std::string("connected: ") + (connected ? "yes" : "no") + "\n";
    out += std::string("pre-Thom-Mather (declared): ") + (pre_thom_mather ? "yes" : "no") + "\n";
    out += std::string("Theorem A applies: ") + (theorem_A ? "yes" : "no") + "\n";
    out += std::string("Theorem B applies: ") + (theorem_B ? "yes" : "no") + "\n";
    out += std::string("Theorem 8.1 applies: ") + (theorem_81 ? "yes" : "no") + "\n";
    out += std::string("Theorem 8.2 applies: ") + (theorem_82 ? "yes" : "no") + "\n";
    return out;
}

TheoremReport theorem_hypothesis_report(const Coarsening& c, const Perversity& p,
                                        bool declared_pre_thom_mather,
                                        LinkFactResolver resolver) {
    TheoremReport r;
    KCheck k = is_K_perversity(c.fine, c.coarse, c.stratum_map, p);
    r.k_perversity = k.ok;
    r.k_certificate = k.certificate;
    r.below_top = leq_top(c.fine, p);
    r.exceptional_present = c.has_exceptional();
    r.one_exceptional_present = c.has_one_exceptional();
    CsDiagnostics d = cs_diagnostics(c.fine);
    r.normal = d.normal;
    Spine sp = regular_spine(c.fine);
    r.connected = sp.components <= 1;
    r.pre_thom_mather = declared_pre_thom_mather;

    bool all_links_trivial = true;
    for (int e : c.exceptional_strata()) {
        LinkFactStatus lf = resolver ? resolver(c, p, e)
                                     : LinkFactStatus{e, "Unknown", "no resolver"};
        lf.stratum = e;
        if (lf.status != "Trivial") all_links_trivial = false;
        r.link_facts.push_back(lf);
    }

    r.theorem_A = r.k_perversity && r.below_top && !r.exceptional_present;
    r.theorem_B = r.k_perversity && r.below_top && r.normal && r.connected &&
                  r.pre_thom_mather && all_links_trivial;
    // pullback route: p must be the pullback of its own pushforward
    PushforwardResult push = pushforward(c.fine, c.coarse, c.stratum_map, p);
    Perversity pull = pullback(c.fine, c.coarse, c.stratum_map, push.perversity);
    bool pullback_form = (pull == p) && leq_top(c.coarse, push.perversity);
    r.theorem_81 = pullback_form && !r.exceptional_present;
    r.theorem_82 = pullback_form && !r.one_exceptional_present && r.normal && r.connected &&
                   r.pre_thom_mather && all_links_trivial;
    return r;
}

} // namespace stratum
