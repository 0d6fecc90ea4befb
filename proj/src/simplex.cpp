#include "stratum/simplex.hpp"

#include <algorithm>
#include <set>

namespace stratum {

Simplex::Simplex(std::vector<int> verts) : v(std::move(verts)) {
    std::sort(v.begin(), v.end());
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) fail("DuplicateVertexInFace", "repeated vertex in simplex");
}

bool Simplex::contains(int vertex) const {
    return std::binary_search(v.begin(), v.end(), vertex);
}

bool Simplex::is_face_of(const Simplex& other) const {
    return std::includes(other.v.begin(), other.v.end(), v.begin(), v.end());
}

bool Simplex::operator<(const Simplex& o) const {
    if (v.size() != o.v.size()) return v.size() < o.v.size();
    return v < o.v;
}

int SimplicialComplex::simplex_id(const Simplex& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
}

int SimplicialComplex::vertex_by_label(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return static_cast<int>(it - labels_.begin());
}

Simplex SimplicialComplex::simplex_from_labels(const std::vector<std::string>& labels) const {
    std::vector<int> ids;
    ids.reserve(labels.size());
    for (const auto& l : labels) {
        int v = vertex_by_label(l);
        if (v < 0) fail("NotASimplex", "unknown vertex label: " + l);
        ids.push_back(v);
    }
    Simplex s(std::move(ids));
    if (!has_simplex(s)) fail("NotASimplex", "vertex set is not a simplex of the complex");
    return s;
}

std::vector<std::string> SimplicialComplex::labels_of(const Simplex& s) const {
    std::vector<std::string> out;
    out.reserve(s.v.size());
    for (int v : s.v) out.push_back(labels_[v]);
    return out;
}

std::vector<int> SimplicialComplex::f_vector() const {
    std::vector<int> f(static_cast<size_t>(dim_ + 1), 0);
    for (const auto& s : simplices_) ++f[s.dim()];
    return f;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    for (const auto& s : simplices_) chi += (s.dim() % 2 == 0) ? 1 : -1;
    return chi;
}

int SimplicialComplex::count_of_dim(int d) const {
    int n = 0;
    for (const auto& s : simplices_)
        if (s.dim() == d) ++n;
    return n;
}

std::vector<int> SimplicialComplex::facet_ids_of(const Simplex& s) const {
    std::vector<int> out;
    if (s.dim() == 0) return out;
    for (size_t i = 0; i < s.v.size(); ++i) {
        Simplex face;
        face.v = s.v;
        face.v.erase(face.v.begin() + static_cast<long>(i));
        out.push_back(simplex_id(face));
    }
    return out;
}

void SimplicialComplex::finalize(std::vector<Simplex> facets) {
    // drop dominated facets
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    std::vector<Simplex> maximal;
    for (const auto& f : facets) {
        bool dominated = false;
        for (const auto& g : facets)
            if (f.v.size() < g.v.size() && f.is_face_of(g)) { dominated = true; break; }
        if (!dominated) maximal.push_back(f);
    }
    facets_ = std::move(maximal);

    std::set<Simplex> all;
    for (const auto& f : facets_) {
        size_t n = f.v.size();
        for (size_t mask = 1; mask < (1ull << n); ++mask) {
            Simplex s;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1ull << i)) s.v.push_back(f.v[i]);
            all.insert(std::move(s));
        }
    }
    simplices_.assign(all.begin(), all.end());
    std::sort(simplices_.begin(), simplices_.end());
    index_.reserve(simplices_.size() * 2);
    for (size_t i = 0; i < simplices_.size(); ++i)
        index_[simplices_[i]] = static_cast<int>(i);
    dim_ = -1;
    for (const auto& f : facets_) dim_ = std::max(dim_, f.dim());
}

SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& facets) {
    if (facets.empty()) fail("EmptyInput", "no facets given");
    std::set<std::string> label_set;
    for (const auto& f : facets) {
        if (f.empty()) fail("EmptyInput", "empty facet");
        std::set<std::string> seen;
        for (const auto& l : f) {
            if (!seen.insert(l).second)
                fail("DuplicateVertexInFace", "facet lists vertex twice: " + l);
            label_set.insert(l);
        }
    }
    SimplicialComplex c;
    c.labels_.assign(label_set.begin(), label_set.end());
    std::vector<Simplex> fs;
    fs.reserve(facets.size());
    for (const auto& f : facets) {
        std::vector<int> ids;
        ids.reserve(f.size());
        for (const auto& l : f) ids.push_back(c.vertex_by_label(l));
        fs.emplace_back(std::move(ids));
    }
    c.finalize(std::move(fs));
    return c;
}

namespace {

std::vector<std::vector<std::string>> facet_labels(const SimplicialComplex& x) {
    std::vector<std::vector<std::string>> out;
    out.reserve(x.facets().size());
    for (const auto& f : x.facets()) out.push_back(x.labels_of(f));
    return out;
}

} // namespace

SimplicialComplex cone_complex(const SimplicialComplex& x, const std::string& apex) {
    if (x.vertex_by_label(apex) >= 0)
        fail("ApexCollision", "apex label already present: " + apex);
    std::vector<std::vector<std::string>> fs = facet_labels(x);
    for (auto& f : fs) f.push_back(apex);
    return build_complex(fs);
}

SimplicialComplex join_complex(const SimplicialComplex& x, const SimplicialComplex& y) {
    for (const auto& l : y.labels())
        if (x.vertex_by_label(l) >= 0)
            fail("VertexCollision", "join operands share vertex label: " + l);
    std::vector<std::vector<std::string>> fs;
    fs.reserve(x.facets().size() * y.facets().size());
    for (const auto& f : x.facets())
        for (const auto& g : y.facets()) {
            std::vector<std::string> fg = x.labels_of(f);
            for (const auto& l : y.labels_of(g)) fg.push_back(l);
            fs.push_back(std::move(fg));
        }
    return build_complex(fs);
}

SimplicialComplex disjoint_union(const SimplicialComplex& x, const SimplicialComplex& y) {
    for (const auto& l : y.labels())
        if (x.vertex_by_label(l) >= 0)
            fail("VertexCollision", "union operands share vertex label: " + l);
    std::vector<std::vector<std::string>> fs = facet_labels(x);
    for (const auto& g : facet_labels(y)) fs.push_back(g);
    return build_complex(fs);
}

SimplicialComplex suspension(const SimplicialComplex& x,
                             const std::string& north, const std::string& south) {
    if (north == south) fail("VertexCollision", "suspension points coincide");
    SimplicialComplex s0 = build_complex({{north}, {south}});
    return join_complex(s0, x);
}

namespace {

std::string sd_label(const SimplicialComplex& x, const Simplex& s) {
    std::string out;
    for (size_t i = 0; i < s.v.size(); ++i) {
        if (i) out += ".";
        out += x.label(s.v[i]);
    }
    return out;
}

} // namespace

Subdivision barycentric_subdivision(const SimplicialComplex& x) {
    std::vector<std::vector<std::string>> fs;
    std::map<std::string, int> carrier_of_label;
    for (const auto& f : x.facets()) {
        // maximal chains inside f, one per vertex permutation
        std::vector<int> perm = f.v;
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<std::string> chain;
            Simplex prefix;
            for (int v : perm) {
                prefix.v.push_back(v);
                std::sort(prefix.v.begin(), prefix.v.end());
                std::string lbl = sd_label(x, prefix);
                carrier_of_label[lbl] = x.simplex_id(prefix);
                chain.push_back(std::move(lbl));
            }
            fs.push_back(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    Subdivision out;
    out.sd = build_complex(fs);
    out.vertex_carrier.assign(out.sd.labels().size(), -1);
    for (size_t v = 0; v < out.sd.labels().size(); ++v)
        out.vertex_carrier[v] = carrier_of_label.at(out.sd.labels()[v]);
    return out;
}

int sd_simplex_carrier(const Subdivision& sub, const Simplex& sd_simplex) {
    int best = -1;
    // carriers along a chain are nested; ids sort by (dim, lex), so the
    // maximal id is the chain maximum
    for (int v : sd_simplex.v)
        best = std::max(best, sub.vertex_carrier[v]);
    return best;
}

SimplicialComplex link_of_simplex(const SimplicialComplex& x, const Simplex& s) {
    if (!x.has_simplex(s)) fail("NotASimplex", "link of a non-simplex requested");
    std::vector<std::vector<std::string>> fs;
    for (const auto& f : x.facets()) {
        if (!s.is_face_of(f)) continue;
        std::vector<std::string> rest;
        for (int v : f.v)
            if (!s.contains(v)) rest.push_back(x.label(v));
        if (!rest.empty()) fs.push_back(std::move(rest));
    }
    if (fs.empty()) return SimplicialComplex(); // empty link, reported as a value
    return build_complex(fs);
}

SimplicialComplex full_subcomplex(const SimplicialComplex& x, const std::vector<int>& vertices) {
    std::vector<char> keep(x.labels().size(), 0);
    for (int v : vertices) keep[v] = 1;
    std::vector<std::vector<std::string>> fs;
    for (const auto& s : x.simplices()) {
        bool all = true;
        for (int v : s.v)
            if (!keep[v]) { all = false; break; }
        if (all) fs.push_back(x.labels_of(s));
    }
    if (fs.empty()) return SimplicialComplex();
    return build_complex(fs); // dominated faces pruned by the builder
}

SimplicialComplex link_by_coface_enumeration(const SimplicialComplex& x, const Simplex& s) {
    if (!x.has_simplex(s)) fail("NotASimplex", "link of a non-simplex requested");
    std::vector<std::vector<std::string>> fs;
    for (const auto& t : x.simplices()) {
        bool disjoint = true;
        for (int v : t.v)
            if (s.contains(v)) { disjoint = false; break; }
        if (!disjoint) continue;
        Simplex u;
        u.v.reserve(t.v.size() + s.v.size());
        std::merge(t.v.begin(), t.v.end(), s.v.begin(), s.v.end(), std::back_inserter(u.v));
        if (x.has_simplex(u)) fs.push_back(x.labels_of(t));
    }
    if (fs.empty()) return SimplicialComplex();
    return build_complex(fs);
}

SimplicialComplex simplex_boundary(int n, const std::string& prefix) {
    if (n < 0) fail("EmptyInput", "negative sphere dimension");
    int verts = n + 2;
    std::vector<std::vector<std::string>> fs;
    for (int skip = 0; skip < verts; ++skip) {
        std::vector<std::string> f;
        for (int i = 0; i < verts; ++i)
            if (i != skip) f.push_back(prefix + std::to_string(i));
        fs.push_back(std::move(f));
    }
    return build_complex(fs);
}

SimplicialComplex cycle_complex(int length, const std::string& prefix) {
    if (length < 3) fail("EmptyInput", "cycle needs at least 3 vertices");
    std::vector<std::vector<std::string>> fs;
    for (int i = 0; i < length; ++i)
        fs.push_back({prefix + std::to_string(i), prefix + std::to_string((i + 1) % length)});
    return build_complex(fs);
}

bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
    if (a.labels() != b.labels()) return false;
    if (a.facets().size() != b.facets().size()) return false;
    for (size_t i = 0; i < a.facets().size(); ++i) {
        if (a.labels_of(a.facets()[i]) != b.labels_of(b.facets()[i])) return false;
    }
    return true;
}

} // namespace stratum
