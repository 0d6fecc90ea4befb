#pragma once
// Finite abstract simplicial complexes given by facets, with the
// constructions the toolkit needs: cones, joins, suspensions, disjoint
// unions, barycentric subdivision and simplex links.

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "stratum/error.hpp"

namespace stratum {

// Sorted, duplicate-free list of local vertex ids.
struct Simplex {
    std::vector<int> v;

    Simplex() = default;
    explicit Simplex(std::vector<int> verts);

    int dim() const { return static_cast<int>(v.size()) - 1; }
    bool contains(int vertex) const;
    bool is_face_of(const Simplex& other) const;

    bool operator==(const Simplex& o) const { return v == o.v; }
    bool operator<(const Simplex& o) const;
};

struct SimplexHash {
    size_t operator()(const Simplex& s) const {
        size_t h = 1469598103934665603ull;
        for (int x : s.v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Simplex>& facets() const { return facets_; }
    // All simplices, ordered by (dimension, vertex list); index in this
    // vector is the simplex id used throughout.
    const std::vector<Simplex>& simplices() const { return simplices_; }
    int dim() const { return dim_; }

    int simplex_id(const Simplex& s) const; // -1 if absent
    bool has_simplex(const Simplex& s) const { return simplex_id(s) >= 0; }

    const std::string& label(int vertex) const { return labels_[vertex]; }
    int vertex_by_label(const std::string& label) const; // -1 if absent

    Simplex simplex_from_labels(const std::vector<std::string>& labels) const;
    std::vector<std::string> labels_of(const Simplex& s) const;

    std::vector<int> f_vector() const;
    long long euler_characteristic() const;
    int count_of_dim(int d) const;

    // ids of the codimension-one faces of s (empty for vertices)
    std::vector<int> facet_ids_of(const Simplex& s) const;

    friend SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& facets);

private:
    std::vector<std::string> labels_;
    std::vector<Simplex> facets_;
    std::vector<Simplex> simplices_;
    std::unordered_map<Simplex, int, SimplexHash> index_;
    int dim_ = -1;

    void finalize(std::vector<Simplex> facets);
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& facets);

SimplicialComplex cone_complex(const SimplicialComplex& x, const std::string& apex);
SimplicialComplex join_complex(const SimplicialComplex& x, const SimplicialComplex& y);
SimplicialComplex disjoint_union(const SimplicialComplex& x, const SimplicialComplex& y);
// Join with two fresh points labeled north/south.
SimplicialComplex suspension(const SimplicialComplex& x,
                             const std::string& north, const std::string& south);

// Barycentric subdivision. Vertices of the result are labeled by the joined
// vertex labels of the original simplex ("a.b.c"); carrier maps each Sd
// vertex back to the id of that simplex in x.
struct Subdivision {
    SimplicialComplex sd;
    std::vector<int> vertex_carrier; // Sd vertex -> simplex id in the original
};
Subdivision barycentric_subdivision(const SimplicialComplex& x);

// id in x of the largest original simplex in the chain of an Sd simplex
int sd_simplex_carrier(const Subdivision& sub, const Simplex& sd_simplex);

SimplicialComplex link_of_simplex(const SimplicialComplex& x, const Simplex& s);

// Full subcomplex spanned by the given vertices (empty result allowed).
SimplicialComplex full_subcomplex(const SimplicialComplex& x, const std::vector<int>& vertices);

// Brute-force link oracle: scans every simplex instead of using facets.
SimplicialComplex link_by_coface_enumeration(const SimplicialComplex& x, const Simplex& s);

// Standard small complexes.
SimplicialComplex simplex_boundary(int n, const std::string& prefix); // S^{n} as boundary of (n+1)-simplex
SimplicialComplex cycle_complex(int length, const std::string& prefix); // S^1 as an n-gon

bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b);

} // namespace stratum
