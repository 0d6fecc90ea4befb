#include "stratum/homology.hpp"

#include <algorithm>

namespace stratum {

RingSpec RingSpec::fp(int p) {
    bool prime = p >= 2;
    for (int d = 2; d * d <= p && prime; ++d)
        if (p % d == 0) prime = false;
    if (!prime || p > 97) fail("RingUnsupported", "F_p needs a prime p <= 97, got " + std::to_string(p));
    return {Ring::Fp, p};
}

RingSpec RingSpec::parse(const std::string& text) {
    if (text == "Z") return Z();
    if (text == "Q") return Q();
    if (text.rfind("Fp:", 0) == 0) {
        int p = 0;
        try {
            p = std::stoi(text.substr(3));
        } catch (...) {
            fail("RingUnsupported", "bad ring spec: " + text);
        }
        return fp(p);
    }
    fail("RingUnsupported", "bad ring spec: " + text);
}

std::string RingSpec::name() const {
    switch (ring) {
        case Ring::Z: return "Z";
        case Ring::Q: return "Q";
        case Ring::Fp: return "F" + std::to_string(p);
    }
    return "?";
}

bool HomologyResult::same_groups(const HomologyResult& other, int through_degree) const {
    for (int k = 0; k <= through_degree; ++k) {
        if (rank(k) != other.rank(k)) return false;
        if (torsion(k) != other.torsion(k)) return false;
    }
    return true;
}

std::string HomologyResult::line(int k, const std::string& prefix) const {
    std::string t = "[";
    auto ts = torsion(k);
    for (size_t i = 0; i < ts.size(); ++i) {
        if (i) t += ",";
        t += std::to_string(ts[i]);
    }
    t += "]";
    return prefix + "[" + std::to_string(k) + "] rank=" + std::to_string(rank(k)) +
           " torsion=" + t + " ring=" + ring.name();
}

std::string HomologyResult::lines(const std::string& prefix) const {
    std::string out;
    for (int k = 0; k <= top_degree(); ++k) out += line(k, prefix) + "\n";
    return out;
}

std::vector<int> simplex_ids_of_dim(const SimplicialComplex& x, int k) {
    std::vector<int> ids;
    const auto& all = x.simplices();
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i].dim() == k) ids.push_back(static_cast<int>(i));
    return ids;
}

IMat boundary_matrix(const SimplicialComplex& x, int k) {
    auto rows = simplex_ids_of_dim(x, k - 1);
    auto cols = simplex_ids_of_dim(x, k);
    std::vector<int> row_of(x.simplices().size(), -1);
    for (size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
    IMat m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    if (k == 0) return m;
    for (size_t c = 0; c < cols.size(); ++c) {
        const Simplex& s = x.simplices()[cols[c]];
        int sign = 1;
        for (size_t i = 0; i < s.v.size(); ++i) {
            Simplex face;
            face.v = s.v;
            face.v.erase(face.v.begin() + static_cast<long>(i));
            int fid = x.simplex_id(face);
            m.at(row_of[fid], static_cast<int>(c)) = sign;
            sign = -sign;
        }
    }
    return m;
}

HomologyResult simplicial_homology(const SimplicialComplex& x, Ring ring, int p) {
    RingSpec rs;
    switch (ring) {
        case Ring::Z: rs = RingSpec::Z(); break;
        case Ring::Q: rs = RingSpec::Q(); break;
        case Ring::Fp: rs = RingSpec::fp(p); break;
    }
    HomologyResult h;
    h.ring = rs;
    int top = x.dim();
    if (top < 0) return h;
    h.free_rank.assign(top + 1, 0);
    h.torsion_list.assign(top + 1, {});
    std::vector<int> counts(top + 2, 0);
    for (int k = 0; k <= top; ++k) counts[k] = x.count_of_dim(k);

    std::vector<int> bd_rank(top + 2, 0);
    std::vector<std::vector<long long>> bd_torsion(top + 2);
    for (int k = 1; k <= top; ++k) {
        IMat d = boundary_matrix(x, k);
        if (ring == Ring::Fp) {
            bd_rank[k] = rank_mod_p(d, p);
        } else {
            auto inv = snf_invariants(d);
            bd_rank[k] = static_cast<int>(inv.size());
            if (ring == Ring::Z)
                for (auto f : inv)
                    if (f > 1) bd_torsion[k].push_back(f);
        }
    }
    for (int k = 0; k <= top; ++k) {
        h.free_rank[k] = counts[k] - bd_rank[k] - bd_rank[k + 1];
        if (ring == Ring::Z) {
            h.torsion_list[k] = bd_torsion[k + 1];
            std::sort(h.torsion_list[k].begin(), h.torsion_list[k].end());
        }
    }
    return h;
}

HomologyResult reduced_homology(const SimplicialComplex& x) {
    HomologyResult h = simplicial_homology(x, Ring::Z);
    if (!h.free_rank.empty() && h.free_rank[0] > 0) --h.free_rank[0];
    return h;
}

std::vector<int> betti_by_dense_elimination(const SimplicialComplex& x) {
    int top = x.dim();
    std::vector<int> betti(std::max(top + 1, 0), 0);
    if (top < 0) return betti;
    std::vector<int> bd_rank(top + 2, 0);
    for (int k = 1; k <= top; ++k) bd_rank[k] = bareiss_rank(boundary_matrix(x, k));
    for (int k = 0; k <= top; ++k)
        betti[k] = x.count_of_dim(k) - bd_rank[k] - bd_rank[k + 1];
    return betti;
}

} // namespace stratum
