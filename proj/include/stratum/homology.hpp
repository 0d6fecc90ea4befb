#pragma once
// Simplicial chain complexes and homology over Z, Q and F_p, plus the
// independent dense-elimination Betti oracle.

#include <string>
#include <vector>

#include "stratum/intlin.hpp"
#include "stratum/simplex.hpp"

namespace stratum {

enum class Ring { Z, Q, Fp };

struct RingSpec {
    Ring ring = Ring::Z;
    int p = 0;

    static RingSpec Z() { return {Ring::Z, 0}; }
    static RingSpec Q() { return {Ring::Q, 0}; }
    static RingSpec fp(int p);
    static RingSpec parse(const std::string& text); // "Z" | "Q" | "Fp:<p>"
    std::string name() const;
    bool is_field() const { return ring != Ring::Z; }
};

struct HomologyResult {
    RingSpec ring;
    std::vector<int> free_rank;
    std::vector<std::vector<long long>> torsion_list;

    int top_degree() const { return static_cast<int>(free_rank.size()) - 1; }
    int rank(int k) const {
        return (k >= 0 && k < static_cast<int>(free_rank.size())) ? free_rank[k] : 0;
    }
    std::vector<long long> torsion(int k) const {
        return (k >= 0 && k < static_cast<int>(torsion_list.size())) ? torsion_list[k]
                                                                     : std::vector<long long>{};
    }
    bool same_groups(const HomologyResult& other, int through_degree) const;
    std::string line(int k, const std::string& prefix) const;
    std::string lines(const std::string& prefix) const;
};

// Boundary matrix d_k: rows index (k-1)-simplices, columns k-simplices,
// signs from the sorted vertex order.
IMat boundary_matrix(const SimplicialComplex& x, int k);
std::vector<int> simplex_ids_of_dim(const SimplicialComplex& x, int k);

HomologyResult simplicial_homology(const SimplicialComplex& x, Ring ring, int p = 0);
inline HomologyResult simplicial_homology(const SimplicialComplex& x, RingSpec rs) {
    return simplicial_homology(x, rs.ring, rs.p);
}

// Reduced variant: degree-0 rank drops by one on nonempty complexes.
HomologyResult reduced_homology(const SimplicialComplex& x);

// Betti numbers over Q by Bareiss fraction-free elimination. Independent of
// the SNF path; used as the corpus oracle.
std::vector<int> betti_by_dense_elimination(const SimplicialComplex& x);

} // namespace stratum
