#include "stratum/strat.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stratum/homology.hpp"

namespace stratum {

namespace {

// union-find
struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// lexicographic order on label sequences, the file-format tie-break rule
bool label_lex_less(const SimplicialComplex& x, const Simplex& a, const Simplex& b) {
    auto la = x.labels_of(a), lb = x.labels_of(b);
    return la < lb;
}

std::string stratum_name(const SimplicialComplex& x, int level, const Simplex& least) {
    std::string id = "s" + std::to_string(level);
    for (int v : least.v) id += "_" + x.label(v);
    return id;
}

} // namespace

int Stratification::carrier_index(const Simplex& s) const {
    int id = complex_->simplex_id(s);
    if (id < 0) fail("NotASimplex", "carrier_index of a non-simplex");
    return carrier_[id];
}

int Stratification::stratum_of(const Simplex& s) const {
    int id = complex_->simplex_id(s);
    if (id < 0) fail("NotASimplex", "stratum_of of a non-simplex");
    return stratum_of_[id];
}

int Stratification::stratum_by_name(const std::string& id) const {
    for (size_t i = 0; i < strata_.size(); ++i)
        if (strata_[i].id == id) return static_cast<int>(i);
    return -1;
}

std::vector<int> Stratification::singular_strata() const {
    std::vector<int> out;
    for (size_t i = 0; i < strata_.size(); ++i)
        if (!strata_[i].regular) out.push_back(static_cast<int>(i));
    return out;
}

bool Stratification::has_singular() const {
    for (const auto& s : strata_)
        if (!s.regular) return true;
    return false;
}

std::vector<Simplex> Stratification::skeleton_facets(int i) const {
    std::vector<Simplex> members;
    for (size_t id = 0; id < carrier_.size(); ++id)
        if (carrier_[id] <= i) members.push_back(complex_->simplices()[id]);
    std::vector<Simplex> maximal;
    for (const auto& s : members) {
        bool dominated = false;
        for (const auto& t : members)
            if (s.v.size() < t.v.size() && s.is_face_of(t)) { dominated = true; break; }
        if (!dominated) maximal.push_back(s);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

Stratification build_from_carriers(ComplexPtr complex, int formal_dim, std::vector<int> carriers) {
    const auto& simps = complex->simplices();
    if (carriers.size() != simps.size()) fail("ShapeMismatch", "carrier table size mismatch");
    if (formal_dim < complex->dim())
        fail("FormalDimTooSmall", "formal dimension below simplicial dimension");

    bool has_regular = false;
    for (size_t i = 0; i < simps.size(); ++i) {
        if (carriers[i] < 0 || carriers[i] > formal_dim)
            fail("SkeletonNotSubcomplex", "carrier index out of range");
        if (carriers[i] == formal_dim) has_regular = true;
    }
    if (!has_regular)
        fail("SingularEqualsTotal", "X_{n-1} equals X_n: no regular simplex");

    // skeleta must be closed: faces never carried above their cofaces
    for (size_t i = 0; i < simps.size(); ++i) {
        const Simplex& s = simps[i];
        if (s.dim() == 0) continue;
        for (int fid : complex->facet_ids_of(s))
            if (carriers[fid] > carriers[i])
                fail("SkeletonNotSubcomplex", "skeleton not closed under faces");
    }

    Stratification st;
    st.complex_ = std::move(complex);
    st.formal_dim_ = formal_dim;
    st.carrier_ = std::move(carriers);

    const SimplicialComplex& x = *st.complex_;
    int nsimp = static_cast<int>(simps.size());

    // strata: components of the codim-1 face relation within one carrier level
    DSU dsu(nsimp);
    for (int i = 0; i < nsimp; ++i) {
        const Simplex& s = simps[i];
        if (s.dim() == 0) continue;
        for (int fid : x.facet_ids_of(s))
            if (st.carrier_[fid] == st.carrier_[i]) dsu.unite(fid, i);
    }
    std::map<int, std::vector<int>> groups; // root -> simplex ids
    for (int i = 0; i < nsimp; ++i) groups[dsu.find(i)].push_back(i);

    struct ProtoStratum {
        int level;
        Simplex least;
        std::vector<int> members;
    };
    std::vector<ProtoStratum> protos;
    for (auto& [root, members] : groups) {
        ProtoStratum p;
        p.level = st.carrier_[root];
        std::sort(members.begin(), members.end());
        p.least = simps[members[0]];
        for (int id : members)
            if (label_lex_less(x, simps[id], p.least)) p.least = simps[id];
        p.members = members;
        protos.push_back(std::move(p));
    }
    std::sort(protos.begin(), protos.end(), [&](const ProtoStratum& a, const ProtoStratum& b) {
        if (a.level != b.level) return a.level < b.level;
        return label_lex_less(x, a.least, b.least);
    });

    st.stratum_of_.assign(nsimp, -1);
    for (size_t k = 0; k < protos.size(); ++k) {
        Stratum s;
        s.id = stratum_name(x, protos[k].level, protos[k].least);
        s.formal_dim = protos[k].level;
        s.codim = formal_dim - protos[k].level;
        s.regular = (protos[k].level == formal_dim);
        s.carrier_simplices = protos[k].members;
        for (int id : s.carrier_simplices) st.stratum_of_[id] = static_cast<int>(k);
        st.strata_.push_back(std::move(s));
    }

    // closure poset: S <= Q iff every carrier of S is a face of a carrier of Q
    int ns = static_cast<int>(st.strata_.size());
    std::vector<std::vector<char>> coface_strata(nsimp, std::vector<char>(ns, 0));
    for (int i = 0; i < nsimp; ++i) {
        const Simplex& t = simps[i];
        int strat_of_t = st.stratum_of_[i];
        size_t n = t.v.size();
        for (size_t mask = 1; mask < (1ull << n); ++mask) {
            Simplex face;
            for (size_t b = 0; b < n; ++b)
                if (mask & (1ull << b)) face.v.push_back(t.v[b]);
            coface_strata[x.simplex_id(face)][strat_of_t] = 1;
        }
    }
    st.poset_.leq.assign(ns, std::vector<char>(ns, 1));
    for (int s = 0; s < ns; ++s)
        for (int q = 0; q < ns; ++q) {
            if (s == q) continue;
            bool leq = true;
            for (int id : st.strata_[s].carrier_simplices)
                if (!coface_strata[id][q]) { leq = false; break; }
            st.poset_.leq[s][q] = leq ? 1 : 0;
        }
    for (int s = 0; s < ns; ++s)
        for (int q = 0; q < ns; ++q)
            if (s != q && st.poset_.leq[s][q] &&
                st.strata_[s].formal_dim >= st.strata_[q].formal_dim)
                st.poset_.dimension_anomalies.emplace_back(s, q);

    // depth: longest strict chain, DP in dimension order (strata are sorted)
    std::vector<int> chain(ns, 0);
    int depth = 0;
    for (int q = 0; q < ns; ++q) {
        for (int s = 0; s < q; ++s)
            if (st.poset_.leq[s][q] && !(st.poset_.leq[q][s] && s != q))
                chain[q] = std::max(chain[q], chain[s] + 1);
        depth = std::max(depth, chain[q]);
    }
    st.poset_.depth = depth;
    return st;
}

Stratification build_stratification(ComplexPtr complex, int formal_dim,
                                    const std::map<int, std::vector<std::vector<std::string>>>& skeleton_facets) {
    const SimplicialComplex& x = *complex;
    int nsimp = static_cast<int>(x.simplices().size());
    std::vector<int> carriers(nsimp, formal_dim);
    std::vector<char> prev_members;
    int prev_level = -1;
    for (const auto& [level, facets] : skeleton_facets) {
        if (level < 0 || level > formal_dim)
            fail("SkeletonNotSubcomplex", "skeleton index out of range: " + std::to_string(level));
        std::vector<char> members(nsimp, 0);
        for (const auto& f : facets) {
            Simplex s;
            try {
                s = x.simplex_from_labels(f);
            } catch (const Error&) {
                fail("SkeletonNotSubcomplex", "listed facet is not a simplex of the complex");
            }
            size_t n = s.v.size();
            for (size_t mask = 1; mask < (1ull << n); ++mask) {
                Simplex face;
                for (size_t b = 0; b < n; ++b)
                    if (mask & (1ull << b)) face.v.push_back(s.v[b]);
                members[x.simplex_id(face)] = 1;
            }
        }
        if (!prev_members.empty()) {
            for (int i = 0; i < nsimp; ++i)
                if (prev_members[i] && !members[i])
                    fail("NotNested", "skeleton " + std::to_string(level) +
                                          " does not contain skeleton " + std::to_string(prev_level));
        }
        if (level == formal_dim) {
            for (int i = 0; i < nsimp; ++i)
                if (!members[i]) fail("NotNested", "top skeleton must be the whole complex");
        }
        for (int i = 0; i < nsimp; ++i)
            if (members[i]) carriers[i] = std::min(carriers[i], level);
        prev_members = members;
        prev_level = level;
    }
    return build_from_carriers(std::move(complex), formal_dim, std::move(carriers));
}

Stratification trivial_stratification(ComplexPtr complex, int formal_dim) {
    std::vector<int> carriers(complex->simplices().size(), formal_dim);
    return build_from_carriers(std::move(complex), formal_dim, std::move(carriers));
}

std::optional<std::vector<int>> is_stratified_coarsening(const Stratification& s,
                                                         const Stratification& t) {
    if (!same_complex(s.complex(), t.complex()))
        fail("DifferentComplex", "coarsening needs one underlying complex");
    if (s.formal_dim() != t.formal_dim())
        fail("DifferentComplex", "coarsening needs one formal dimension");
    const int ns = static_cast<int>(s.strata().size());
    std::vector<int> map(ns, -1);
    for (int i = 0; i < ns; ++i) {
        const auto& carriers = s.strata()[i].carrier_simplices;
        int target = t.stratum_of_id(carriers[0]);
        for (int id : carriers)
            if (t.stratum_of_id(id) != target) return std::nullopt; // splits a T-stratum
        map[i] = target;
        // codim S^iota <= codim S
        if (t.strata()[target].codim > s.strata()[i].codim) return std::nullopt;
    }
    return map;
}

Stratification induced_stratification(const Stratification& strat,
                                      const std::vector<std::vector<std::string>>& facets,
                                      RestrictionMode mode) {
    const SimplicialComplex& x = strat.complex();
    if (mode == RestrictionMode::ClosedSubcomplex) {
        SimplicialComplex u = build_complex(facets);
        std::vector<int> carriers(u.simplices().size(), 0);
        bool regular_found = false;
        for (size_t i = 0; i < u.simplices().size(); ++i) {
            Simplex in_x;
            try {
                in_x = x.simplex_from_labels(u.labels_of(u.simplices()[i]));
            } catch (const Error&) {
                fail("SkeletonNotSubcomplex", "restriction set is not a subcomplex");
            }
            carriers[i] = strat.carrier_index(in_x);
            if (carriers[i] == strat.formal_dim()) regular_found = true;
        }
        if (!regular_found)
            fail("EmptyIntersectionWithRegularPart", "restriction misses the regular part");
        return build_from_carriers(std::make_shared<SimplicialComplex>(std::move(u)),
                                   strat.formal_dim(), std::move(carriers));
    }

    // open complement: spine of Sd(X) on barycenters outside the subcomplex
    SimplicialComplex a = build_complex(facets);
    std::vector<char> removed(x.simplices().size(), 0);
    for (const auto& s : a.simplices()) {
        Simplex in_x;
        try {
            in_x = x.simplex_from_labels(a.labels_of(s));
        } catch (const Error&) {
            fail("SkeletonNotSubcomplex", "complement base is not a subcomplex");
        }
        removed[x.simplex_id(in_x)] = 1;
    }
    Subdivision sub = barycentric_subdivision(x);
    std::vector<int> keep;
    for (size_t v = 0; v < sub.sd.labels().size(); ++v)
        if (!removed[sub.vertex_carrier[v]]) keep.push_back(static_cast<int>(v));
    SimplicialComplex spine = full_subcomplex(sub.sd, keep);
    if (spine.simplices().empty())
        fail("EmptyIntersectionWithRegularPart", "complement spine is empty");
    std::vector<int> carriers(spine.simplices().size(), 0);
    bool regular_found = false;
    for (size_t i = 0; i < spine.simplices().size(); ++i) {
        const Simplex& chain = spine.simplices()[i];
        int level = -1;
        for (int v : chain.v) {
            int sd_vertex = sub.sd.vertex_by_label(spine.label(v));
            level = std::max(level, strat.carrier_index_by_id(sub.vertex_carrier[sd_vertex]));
        }
        carriers[i] = level;
        if (level == strat.formal_dim()) regular_found = true;
    }
    if (!regular_found)
        fail("EmptyIntersectionWithRegularPart", "complement misses the regular part");
    return build_from_carriers(std::make_shared<SimplicialComplex>(std::move(spine)),
                               strat.formal_dim(), std::move(carriers));
}

Stratification cone_stratification(const Stratification& base, const std::string& apex) {
    SimplicialComplex cone = cone_complex(base.complex(), apex);
    int apex_vertex = cone.vertex_by_label(apex);
    std::vector<int> carriers(cone.simplices().size(), 0);
    for (size_t i = 0; i < cone.simplices().size(); ++i) {
        Simplex s = cone.simplices()[i];
        if (s.dim() == 0 && s.v[0] == apex_vertex) { carriers[i] = 0; continue; }
        Simplex g;
        for (int v : s.v)
            if (v != apex_vertex) g.v.push_back(v);
        Simplex in_base = base.complex().simplex_from_labels(cone.labels_of(g));
        carriers[i] = base.carrier_index(in_base) + 1;
    }
    return build_from_carriers(std::make_shared<SimplicialComplex>(std::move(cone)),
                               base.formal_dim() + 1, std::move(carriers));
}

Stratification join_sphere_stratification(int m, const Stratification& base,
                                          const std::string& sphere_prefix) {
    SimplicialComplex sphere = simplex_boundary(m, sphere_prefix);
    SimplicialComplex join = join_complex(sphere, base.complex());
    std::vector<char> is_sphere_vertex(join.labels().size(), 0);
    for (const auto& l : sphere.labels()) is_sphere_vertex[join.vertex_by_label(l)] = 1;
    std::vector<int> carriers(join.simplices().size(), 0);
    for (size_t i = 0; i < join.simplices().size(); ++i) {
        const Simplex& s = join.simplices()[i];
        Simplex g;
        for (int v : s.v)
            if (!is_sphere_vertex[v]) g.v.push_back(v);
        if (g.v.empty()) {
            carriers[i] = m;
        } else {
            Simplex in_base = base.complex().simplex_from_labels(join.labels_of(g));
            carriers[i] = m + 1 + base.carrier_index(in_base);
        }
    }
    return build_from_carriers(std::make_shared<SimplicialComplex>(std::move(join)),
                               m + 1 + base.formal_dim(), std::move(carriers));
}

Stratification point_refinement(const Stratification& strat, const std::string& vertex_label) {
    const SimplicialComplex& x = strat.complex();
    int v = x.vertex_by_label(vertex_label);
    if (v < 0) fail("NotASimplex", "no such vertex: " + vertex_label);
    Simplex pt({v});
    int st = strat.stratum_of(pt);
    if (strat.strata()[st].carrier_simplices.size() == 1 &&
        x.simplices()[strat.strata()[st].carrier_simplices[0]] == pt)
        fail("AlreadyAPointStratum", "{" + vertex_label + "} is already a stratum");
    std::vector<int> carriers(x.simplices().size());
    for (size_t i = 0; i < carriers.size(); ++i) carriers[i] = strat.carrier_index_by_id(static_cast<int>(i));
    carriers[x.simplex_id(pt)] = 0;
    return build_from_carriers(strat.complex_ptr(), strat.formal_dim(), std::move(carriers));
}

StratumLink stratum_link(const Stratification& strat, const Simplex& s) {
    const SimplicialComplex& x = strat.complex();
    int st = strat.stratum_of(s);
    if (strat.strata()[st].regular)
        fail("RegularSimplex", "stratum_link of a regular simplex");
    StratumLink out;
    out.link = link_of_simplex(x, s);
    if (out.link.simplices().empty()) {
        out.note = "empty link";
        return out;
    }
    int shift = s.dim() + 1;
    std::vector<int> carriers(out.link.simplices().size(), 0);
    bool valid = true;
    bool regular_found = false;
    for (size_t i = 0; i < out.link.simplices().size(); ++i) {
        Simplex in_x = x.simplex_from_labels(out.link.labels_of(out.link.simplices()[i]));
        int c = strat.carrier_index(in_x) - shift;
        if (c < 0) { valid = false; break; }
        carriers[i] = c;
        if (c == strat.formal_dim() - shift) regular_found = true;
    }
    if (!valid || !regular_found) {
        out.note = valid ? "link has no regular part under the shift rule"
                         : "link meets skeleta below the carrier level; induced filtration undefined";
        return out;
    }
    out.stratification = build_from_carriers(std::make_shared<SimplicialComplex>(out.link),
                                             strat.formal_dim() - shift, std::move(carriers));
    // match link strata to the ambient strata their cone-direction products lie in
    const Stratification& ls = *out.stratification;
    out.ambient_stratum.assign(ls.strata().size(), -1);
    for (size_t k = 0; k < ls.strata().size(); ++k) {
        int ambient = -2;
        for (int id : ls.strata()[k].carrier_simplices) {
            Simplex tau = x.simplex_from_labels(ls.complex().labels_of(ls.complex().simplices()[id]));
            Simplex joined;
            std::merge(tau.v.begin(), tau.v.end(), s.v.begin(), s.v.end(),
                       std::back_inserter(joined.v));
            int a = strat.stratum_of(joined);
            if (ambient == -2) ambient = a;
            else if (ambient != a) { ambient = -1; break; }
        }
        out.ambient_stratum[k] = ambient;
        if (ambient < 0) out.note = "link stratum does not match a single ambient stratum";
    }
    return out;
}

namespace {

// spine construction is the one expensive derived computation; memoize it
// per (complex, carrier table) so the property suites can call pi0 freely
struct SpineCacheEntry {
    const SimplicialComplex* complex;
    std::vector<int> carriers;
    Spine spine;
};
std::vector<SpineCacheEntry>& spine_cache() {
    static std::vector<SpineCacheEntry> cache;
    return cache;
}

} // namespace

Spine regular_spine(const Stratification& strat) {
    std::vector<int> carriers(strat.complex().simplices().size());
    for (size_t i = 0; i < carriers.size(); ++i)
        carriers[i] = strat.carrier_index_by_id(static_cast<int>(i));
    for (const auto& e : spine_cache())
        if (e.complex == &strat.complex() && e.carriers == carriers) return e.spine;
    Subdivision sub = barycentric_subdivision(strat.complex());
    std::vector<int> keep;
    for (size_t v = 0; v < sub.sd.labels().size(); ++v)
        if (strat.carrier_index_by_id(sub.vertex_carrier[v]) == strat.formal_dim())
            keep.push_back(static_cast<int>(v));
    Spine sp;
    sp.complex = full_subcomplex(sub.sd, keep);
    sp.vertex_to_simplex.assign(sp.complex.labels().size(), -1);
    for (size_t v = 0; v < sp.complex.labels().size(); ++v) {
        int sd_vertex = sub.sd.vertex_by_label(sp.complex.label(static_cast<int>(v)));
        sp.vertex_to_simplex[v] = sub.vertex_carrier[sd_vertex];
    }
    int nv = static_cast<int>(sp.complex.labels().size());
    DSU dsu(nv);
    for (const auto& s : sp.complex.simplices())
        if (s.dim() == 1) dsu.unite(s.v[0], s.v[1]);
    std::map<int, int> roots;
    sp.component_of_vertex.assign(nv, -1);
    for (int v = 0; v < nv; ++v) {
        int r = dsu.find(v);
        auto [it, fresh] = roots.emplace(r, static_cast<int>(roots.size()));
        sp.component_of_vertex[v] = it->second;
        (void)fresh;
    }
    sp.components = static_cast<int>(roots.size());
    if (spine_cache().size() < 64)
        spine_cache().push_back({&strat.complex(), std::move(carriers), sp});
    return sp;
}

int pi0_regular_by_open_stars(const Stratification& strat) {
    const SimplicialComplex& x = strat.complex();
    int n = static_cast<int>(x.simplices().size());
    DSU dsu(n);
    // two regular open cells meet the same open star iff they share a coface;
    // joining every regular face of each regular simplex generates exactly that
    for (int i = 0; i < n; ++i) {
        if (strat.carrier_index_by_id(i) != strat.formal_dim()) continue;
        const Simplex& t = x.simplices()[i];
        size_t nv = t.v.size();
        for (size_t mask = 1; mask < (1ull << nv); ++mask) {
            Simplex face;
            for (size_t b = 0; b < nv; ++b)
                if (mask & (1ull << b)) face.v.push_back(t.v[b]);
            int fid = x.simplex_id(face);
            if (strat.carrier_index_by_id(fid) == strat.formal_dim()) dsu.unite(fid, i);
        }
    }
    std::set<int> roots;
    for (int i = 0; i < n; ++i)
        if (strat.carrier_index_by_id(i) == strat.formal_dim()) roots.insert(dsu.find(i));
    return static_cast<int>(roots.size());
}

namespace {

std::string betti_string(const HomologyResult& h) {
    std::string out = "(";
    for (int k = 0; k <= h.top_degree(); ++k) {
        if (k) out += ",";
        out += std::to_string(h.rank(k));
        auto t = h.torsion(k);
        if (!t.empty()) {
            out += "+tors[";
            for (size_t i = 0; i < t.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(t[i]);
            }
            out += "]";
        }
    }
    return out + ")";
}

} // namespace

std::string CsDiagnostics::to_text() const {
    std::string out;
    out += std::string("frontier: ") + (frontier_ok ? "ok" : "violated") + "\n";
    for (const auto& v : frontier_violations) out += "  " + v + "\n";
    out += std::string("link-consistency: ") + (link_consistent ? "ok" : "FAILED (not a CS set)") + "\n";
    for (const auto& v : link_certificates) out += "  " + v + "\n";
    out += std::string("normal: ") + (normal ? "yes" : "no") + "\n";
    for (const auto& v : normality_notes) out += "  " + v + "\n";
    out += "codim-1 strata: " + std::to_string(codim1_strata.size()) + "\n";
    for (const auto& v : codim1_strata) out += "  " + v + "\n";
    out += std::string("component-check: ") + (component_check_ok ? "ok" : "mismatch") + "\n";
    for (const auto& v : component_notes) out += "  " + v + "\n";
    return out;
}

CsDiagnostics cs_diagnostics(const Stratification& strat) {
    CsDiagnostics d;
    const auto& strata = strat.strata();
    int ns = static_cast<int>(strata.size());

    // (a) frontier: meeting a closure forces containment in it
    for (int s = 0; s < ns; ++s)
        for (int q = 0; q < ns; ++q) {
            if (s == q || strat.poset().leq[s][q]) continue;
            bool meets = false;
            for (int sid : strata[s].carrier_simplices) {
                for (int qid : strata[q].carrier_simplices)
                    if (strat.complex().simplices()[sid].is_face_of(strat.complex().simplices()[qid])) {
                        meets = true;
                        break;
                    }
                if (meets) break;
            }
            if (meets) {
                d.frontier_ok = false;
                d.frontier_violations.push_back("FrontierAnomaly: " + strata[s].id + " meets closure of " +
                                                strata[q].id + " without lying in it");
            }
        }
    for (auto [s, q] : strat.poset().dimension_anomalies) {
        d.frontier_ok = false;
        d.frontier_violations.push_back("FrontierAnomaly: " + strata[s].id + " < " + strata[q].id +
                                        " but dim " + std::to_string(strata[s].formal_dim) +
                                        " >= " + std::to_string(strata[q].formal_dim));
    }

    // (b) homological-link consistency within each singular stratum,
    // compared across carrier simplices of equal dimension; (c) normality
    for (int s = 0; s < ns; ++s) {
        if (strata[s].regular) continue;
        std::map<int, std::pair<std::string, HomologyResult>> reference; // dim -> (simplex, betti)
        for (int id : strata[s].carrier_simplices) {
            const Simplex& sigma = strat.complex().simplices()[id];
            StratumLink lk = stratum_link(strat, sigma);
            if (lk.link.simplices().empty()) continue;
            HomologyResult h = reduced_homology(lk.link);
            std::string name;
            for (const auto& l : strat.complex().labels_of(sigma)) name += (name.empty() ? "" : "_") + l;
            auto it = reference.find(sigma.dim());
            if (it == reference.end()) {
                reference.emplace(sigma.dim(), std::make_pair(name, h));
            } else if (!(it->second.second.same_groups(h, std::max(it->second.second.top_degree(),
                                                                   h.top_degree())))) {
                d.link_consistent = false;
                d.link_certificates.push_back(
                    "LinkInconsistency in " + strata[s].id + ": link at " + it->second.first +
                    " has reduced H=" + betti_string(it->second.second) + " but link at " + name +
                    " has reduced H=" + betti_string(h));
            }
            if (h.rank(0) > 0) { // reduced rank > 0 means disconnected
                d.normal = false;
                d.normality_notes.push_back("link at " + name + " in " + strata[s].id +
                                            " is disconnected");
            }
        }
    }

    // (d) codim-1 inventory
    for (const auto& s : strata)
        if (!s.regular && s.codim == 1) d.codim1_strata.push_back(s.id);

    // stratum components: face-relation strata vs open-star adjacency
    {
        int expected = 0;
        for (const auto& s : strata)
            if (s.regular) ++expected;
        int got = pi0_regular_by_open_stars(strat);
        if (got != expected) {
            d.component_check_ok = false;
            d.component_notes.push_back("regular strata count " + std::to_string(expected) +
                                        " vs open-star components " + std::to_string(got));
        }
    }
    return d;
}

} // namespace stratum
