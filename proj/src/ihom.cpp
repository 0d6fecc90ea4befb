#include "stratum/ihom.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace stratum {

namespace {

IMat vstack(const IMat& a, const IMat& b) {
    if (a.cols != b.cols) fail("ShapeMismatch", "vstack shape mismatch");
    IMat r(a.rows + b.rows, a.cols);
    std::copy(a.a.begin(), a.a.end(), r.a.begin());
    std::copy(b.a.begin(), b.a.end(), r.a.begin() + a.a.size());
    return r;
}

IMat zero_mat(int r, int c) { return IMat(r, c); }

} // namespace

AllowabilityTable allowability_table(const Stratification& strat, const Perversity& p) {
    const SimplicialComplex& x = strat.complex();
    AllowabilityTable t;
    t.singular = strat.singular_strata();
    int nsing = static_cast<int>(t.singular.size());
    std::vector<int> sing_pos(strat.strata().size(), -1);
    for (int k = 0; k < nsing; ++k) sing_pos[t.singular[k]] = k;

    std::vector<ExtInt> dual_of(nsing);
    for (int k = 0; k < nsing; ++k)
        dual_of[k] = top_value(strat, t.singular[k]) - p.values[t.singular[k]];

    int n = static_cast<int>(x.simplices().size());
    t.carrier_dim.assign(n, std::vector<int>(nsing, -1));
    for (int i = 0; i < n; ++i) {
        const Simplex& s = x.simplices()[i];
        size_t nv = s.v.size();
        for (size_t mask = 1; mask < (1ull << nv); ++mask) {
            Simplex face;
            for (size_t b = 0; b < nv; ++b)
                if (mask & (1ull << b)) face.v.push_back(s.v[b]);
            int fs = strat.stratum_of_id(x.simplex_id(face));
            int pos = sing_pos[fs];
            if (pos >= 0)
                t.carrier_dim[i][pos] = std::max(t.carrier_dim[i][pos], face.dim());
        }
    }
    t.allowable.assign(n, 1);
    for (int i = 0; i < n; ++i) {
        const Simplex& s = x.simplices()[i];
        for (int k = 0; k < nsing && t.allowable[i]; ++k) {
            if (t.carrier_dim[i][k] < 0) continue; // no face in that stratum
            ExtInt bound = ExtInt::fin(s.dim()) - dual_of[k] - ExtInt::fin(2);
            if (!(ExtInt::fin(t.carrier_dim[i][k]) <= bound)) t.allowable[i] = 0;
        }
    }
    // fullness: simplices are sorted by dimension, so faces come first
    t.full.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        if (!t.allowable[i]) continue;
        bool ok = true;
        for (int fid : x.facet_ids_of(x.simplices()[i]))
            if (!t.full[fid]) { ok = false; break; }
        t.full[i] = (x.simplices()[i].dim() == 0 || ok) ? 1 : 0;
    }
    return t;
}

namespace {

// Gaussian solve B X = Y over F_p; B columns independent.
IMat solve_mod_p(const IMat& b, const IMat& y, int p) {
    auto norm = [p](long long v) {
        long long r = v % p;
        return r < 0 ? r + p : r;
    };
    auto inv = [p](long long a) {
        long long r = 1, base = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    int rows = b.rows, cols = b.cols, ycols = y.cols;
    IMat m(rows, cols + ycols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m.at(i, j) = norm(b.at(i, j));
        for (int j = 0; j < ycols; ++j) m.at(i, cols + j) = norm(y.at(i, j));
    }
    std::vector<int> pivot_row_of_col(cols, -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int r = rank; r < rows; ++r)
            if (m.at(r, col) != 0) { pr = r; break; }
        if (pr < 0) continue;
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(rank, c), m.at(pr, c));
        long long iv = inv(m.at(rank, col));
        for (int c = col; c < m.cols; ++c) m.at(rank, c) = m.at(rank, c) * iv % p;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            long long f = m.at(r, col);
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) = norm(m.at(r, c) - f * m.at(rank, c));
        }
        pivot_row_of_col[col] = rank;
        ++rank;
    }
    IMat x(cols, ycols);
    for (int r = rank; r < rows; ++r)
        for (int j = 0; j < ycols; ++j)
            if (m.at(r, cols + j) != 0)
                fail("ShapeMismatch", "mod-p system is inconsistent");
    for (int c = 0; c < cols; ++c) {
        int pr = pivot_row_of_col[c];
        if (pr < 0) fail("ShapeMismatch", "mod-p basis columns are dependent");
        for (int j = 0; j < ycols; ++j) x.at(c, j) = m.at(pr, cols + j);
    }
    return x;
}

} // namespace

ICComplex intersection_chain_complex_on(const Stratification& strat, const Perversity& p,
                                        RingSpec ring, const std::vector<char>& keep_simplex) {
    const SimplicialComplex& x = strat.complex();
    if (ring.ring == Ring::Fp) RingSpec::fp(ring.p); // validates
    AllowabilityTable at = allowability_table(strat, p);
    ICComplex cc;
    cc.complex = strat.complex_ptr();
    cc.ring = ring;
    cc.top = x.dim();
    cc.embed.resize(cc.top + 1);
    cc.boundary.resize(cc.top + 1);
    std::vector<std::vector<int>> ids_of_dim(cc.top + 1);
    for (int k = 0; k <= cc.top; ++k) ids_of_dim[k] = simplex_ids_of_dim(x, k);

    for (int k = 0; k <= cc.top; ++k) {
        const auto& cols_all = ids_of_dim[k];
        std::vector<int> allow_cols;
        for (int id : cols_all)
            if (at.allowable[id] && keep_simplex[id]) allow_cols.push_back(id);
        // rows: (k-1)-simplices NOT allowable (boundaries must avoid them)
        std::vector<int> bad_rows;
        std::vector<int> row_pos(x.simplices().size(), -1);
        if (k >= 1) {
            for (size_t r = 0; r < ids_of_dim[k - 1].size(); ++r)
                row_pos[ids_of_dim[k - 1][r]] = static_cast<int>(r);
            for (int id : ids_of_dim[k - 1])
                if (!at.allowable[id]) bad_rows.push_back(id);
        }
        IMat m(static_cast<int>(bad_rows.size()), static_cast<int>(allow_cols.size()));
        std::vector<int> bad_pos(x.simplices().size(), -1);
        for (size_t r = 0; r < bad_rows.size(); ++r) bad_pos[bad_rows[r]] = static_cast<int>(r);
        for (size_t c = 0; c < allow_cols.size(); ++c) {
            const Simplex& s = x.simplices()[allow_cols[c]];
            int sign = 1;
            for (size_t i = 0; i < s.v.size() && k >= 1; ++i) {
                Simplex face;
                face.v = s.v;
                face.v.erase(face.v.begin() + static_cast<long>(i));
                int fid = x.simplex_id(face);
                if (bad_pos[fid] >= 0) m.at(bad_pos[fid], static_cast<int>(c)) = sign;
                sign = -sign;
            }
        }
        IMat kernel = (ring.ring == Ring::Fp) ? kernel_basis_mod_p(m, ring.p) : kernel_basis(m);
        // scatter to full k-simplex coordinates
        IMat embed(static_cast<int>(cols_all.size()), kernel.cols);
        std::vector<int> col_pos(x.simplices().size(), -1);
        for (size_t c = 0; c < cols_all.size(); ++c) col_pos[cols_all[c]] = static_cast<int>(c);
        for (size_t c = 0; c < allow_cols.size(); ++c)
            for (int j = 0; j < kernel.cols; ++j)
                embed.at(col_pos[allow_cols[c]], j) = kernel.at(static_cast<int>(c), j);
        cc.embed[k] = std::move(embed);
    }
    for (int k = 0; k <= cc.top; ++k) {
        if (k == 0) {
            cc.boundary[0] = zero_mat(0, cc.embed[0].cols);
            continue;
        }
        IMat d_full = boundary_matrix(x, k);
        IMat d = mat_mul(d_full, cc.embed[k]);
        std::optional<IMat> expressed;
        if (ring.ring == Ring::Fp) {
            expressed = solve_mod_p(cc.embed[k - 1], d, ring.p);
        } else {
            expressed = solve_in_lattice(cc.embed[k - 1], d);
        }
        if (!expressed)
            fail("ShapeMismatch", "boundary left the intersection chain module"); // unreachable
        cc.boundary[k] = std::move(*expressed);
    }
    // d.d = 0
    for (int k = 2; k <= cc.top; ++k) {
        IMat dd = mat_mul(cc.boundary[k - 1], cc.boundary[k]);
        for (auto v : dd.a) {
            bool zero = (ring.ring == Ring::Fp) ? (v % ring.p == 0) : (v == 0);
            if (!zero) fail("ShapeMismatch", "d.d != 0 in intersection chain complex");
        }
    }
    return cc;
}

ICComplex intersection_chain_complex(const Stratification& strat, const Perversity& p,
                                     RingSpec ring) {
    std::vector<char> keep(strat.complex().simplices().size(), 1);
    return intersection_chain_complex_on(strat, p, ring, keep);
}

HomologyResult ic_homology(const ICComplex& cc) {
    HomologyResult h;
    h.ring = cc.ring;
    if (cc.top < 0) return h;
    h.free_rank.assign(cc.top + 1, 0);
    h.torsion_list.assign(cc.top + 1, {});
    std::vector<int> bd_rank(cc.top + 2, 0);
    std::vector<std::vector<long long>> bd_tors(cc.top + 2);
    for (int k = 1; k <= cc.top; ++k) {
        if (cc.ring.ring == Ring::Fp) {
            bd_rank[k] = rank_mod_p(cc.boundary[k], cc.ring.p);
        } else {
            auto inv = snf_invariants(cc.boundary[k]);
            bd_rank[k] = static_cast<int>(inv.size());
            if (cc.ring.ring == Ring::Z)
                for (auto f : inv)
                    if (f > 1) bd_tors[k].push_back(f);
        }
    }
    for (int k = 0; k <= cc.top; ++k) {
        h.free_rank[k] = cc.embed[k].cols - bd_rank[k] - bd_rank[k + 1];
        if (cc.ring.ring == Ring::Z) {
            h.torsion_list[k] = bd_tors[k + 1];
            std::sort(h.torsion_list[k].begin(), h.torsion_list[k].end());
        }
    }
    return h;
}

HomologyResult intersection_homology(const Stratification& strat, const Perversity& p,
                                     RingSpec ring) {
    return ic_homology(intersection_chain_complex(strat, p, ring));
}

std::vector<int> ih_betti_by_rank_oracle(const Stratification& strat, const Perversity& p) {
    const SimplicialComplex& x = strat.complex();
    AllowabilityTable at = allowability_table(strat, p);
    int top = x.dim();
    std::vector<int> dim_ic(top + 2, 0), bnd(top + 2, 0);
    for (int k = 0; k <= top; ++k) {
        auto cols_all = simplex_ids_of_dim(x, k);
        std::vector<int> allow_cols;
        for (int id : cols_all)
            if (at.allowable[id]) allow_cols.push_back(id);
        IMat d_full = boundary_matrix(x, k); // all rows
        std::vector<int> col_pos(x.simplices().size(), -1);
        for (size_t c = 0; c < cols_all.size(); ++c) col_pos[cols_all[c]] = static_cast<int>(c);
        IMat a(d_full.rows, static_cast<int>(allow_cols.size()));
        for (size_t c = 0; c < allow_cols.size(); ++c)
            for (int r = 0; r < d_full.rows; ++r)
                a.at(r, static_cast<int>(c)) = d_full.at(r, col_pos[allow_cols[c]]);
        // rows of bad (k-1)-simplices
        IMat m(0, a.cols);
        if (k >= 1) {
            auto rows_all = simplex_ids_of_dim(x, k - 1);
            std::vector<int> bad;
            for (size_t r = 0; r < rows_all.size(); ++r)
                if (!at.allowable[rows_all[r]]) bad.push_back(static_cast<int>(r));
            IMat mm(static_cast<int>(bad.size()), a.cols);
            for (size_t r = 0; r < bad.size(); ++r)
                for (int c = 0; c < a.cols; ++c) mm.at(static_cast<int>(r), c) = a.at(bad[r], c);
            m = std::move(mm);
        }
        int rank_m = bareiss_rank(m);
        dim_ic[k] = a.cols - rank_m;
        bnd[k] = (k == 0) ? 0 : bareiss_rank(vstack(m, a)) - rank_m;
    }
    std::vector<int> betti(top + 1, 0);
    for (int k = 0; k <= top; ++k) betti[k] = dim_ic[k] - bnd[k] - bnd[k + 1];
    return betti;
}

ICComplex transport_ic(const ICComplex& small, ComplexPtr big) {
    const SimplicialComplex& s = *small.complex;
    const SimplicialComplex& b = *big;
    ICComplex out;
    out.complex = big;
    out.ring = small.ring;
    out.top = b.dim();
    out.embed.resize(out.top + 1);
    out.boundary.resize(out.top + 1);
    for (int k = 0; k <= out.top; ++k) {
        auto big_ids = simplex_ids_of_dim(b, k);
        int zk = (k <= small.top) ? small.embed[k].cols : 0;
        IMat embed(static_cast<int>(big_ids.size()), zk);
        if (k <= small.top) {
            auto small_ids = simplex_ids_of_dim(s, k);
            std::vector<int> big_pos(b.simplices().size(), -1);
            for (size_t r = 0; r < big_ids.size(); ++r) big_pos[big_ids[r]] = static_cast<int>(r);
            for (size_t r = 0; r < small_ids.size(); ++r) {
                Simplex in_big = b.simplex_from_labels(s.labels_of(s.simplices()[small_ids[r]]));
                int row = big_pos[b.simplex_id(in_big)];
                for (int c = 0; c < zk; ++c)
                    embed.at(row, c) = small.embed[k].at(static_cast<int>(r), c);
            }
            out.boundary[k] = small.boundary[k];
        } else {
            out.boundary[k] = zero_mat(k >= 1 && k - 1 <= small.top ? small.embed[k - 1].cols : 0, 0);
        }
        out.embed[k] = std::move(embed);
    }
    return out;
}

namespace {

struct DegreeData {
    IMat cycles;    // basis of ker d_k in IC coordinates
    IMat relations; // boundaries expressed in the cycle basis
};

DegreeData degree_data(const ICComplex& cc, int k) {
    DegreeData d;
    if (k < 0 || k > cc.top) {
        d.cycles = IMat(0, 0);
        d.relations = IMat(0, 0);
        return d;
    }
    d.cycles = kernel_basis(cc.boundary[k]);
    IMat img = (k + 1 <= cc.top) ? cc.boundary[k + 1] : zero_mat(cc.embed[k].cols, 0);
    auto rel = solve_in_lattice(d.cycles, img);
    if (!rel) fail("ShapeMismatch", "boundaries are not cycles");
    d.relations = std::move(*rel);
    return d;
}

// columns = zA from the induced cycle map, then the relations of B
bool surjective_z(const IMat& g, const IMat& rb, int zb) {
    IMat m = hstack(g, rb);
    auto inv = snf_invariants(m);
    if (static_cast<int>(inv.size()) != zb) return false;
    for (auto v : inv)
        if (v != 1) return false;
    return true;
}

} // namespace

InducedMap induced_homology_map(const ICComplex& a, const ICComplex& b, int k) {
    InducedMap r;
    int za_cols = (k >= 0 && k <= a.top) ? a.embed[k].cols : 0;
    int zb_cols = (k >= 0 && k <= b.top) ? b.embed[k].cols : 0;
    if (za_cols == 0 && zb_cols == 0) {
        r.defined = r.iso = r.epi = true;
        return r;
    }
    IMat embed_a = (k <= a.top) ? a.embed[k] : zero_mat(b.embed[k].rows, 0);
    IMat embed_b = (k <= b.top) ? b.embed[k] : zero_mat(embed_a.rows, 0);
    auto f = solve_in_lattice(embed_b, embed_a);
    if (!f) return r; // not a chain-level inclusion
    r.defined = true;
    DegreeData da = degree_data(a, k);
    DegreeData db = degree_data(b, k);
    auto g = solve_in_lattice(db.cycles, mat_mul(*f, da.cycles));
    if (!g) fail("ShapeMismatch", "cycle image is not a cycle");
    int zb = db.cycles.cols;
    r.epi = surjective_z(*g, db.relations, zb);
    if (!r.epi) return r;
    // injectivity: preimages of boundaries must be boundaries
    IMat stacked = hstack(*g, db.relations);
    IMat ker = kernel_basis(stacked);
    IMat xpart(da.cycles.cols, ker.cols);
    for (int c = 0; c < ker.cols; ++c)
        for (int rr = 0; rr < da.cycles.cols; ++rr) xpart.at(rr, c) = ker.at(rr, c);
    r.iso = solve_in_lattice(da.relations, xpart).has_value();
    return r;
}

InducedMap induced_map_over_Q(const ICComplex& a, const ICComplex& b, int k) {
    InducedMap r;
    int za_cols = (k >= 0 && k <= a.top) ? a.embed[k].cols : 0;
    int zb_cols = (k >= 0 && k <= b.top) ? b.embed[k].cols : 0;
    if (za_cols == 0 && zb_cols == 0) {
        r.defined = r.iso = r.epi = true;
        return r;
    }
    IMat embed_a = (k <= a.top) ? a.embed[k] : zero_mat(b.embed[k].rows, 0);
    IMat embed_b = (k <= b.top) ? b.embed[k] : zero_mat(embed_a.rows, 0);
    auto f = solve_in_lattice(embed_b, embed_a);
    if (!f) return r;
    r.defined = true;
    DegreeData da = degree_data(a, k);
    DegreeData db = degree_data(b, k);
    auto g = solve_in_lattice(db.cycles, mat_mul(*f, da.cycles));
    if (!g) fail("ShapeMismatch", "cycle image is not a cycle");
    int dim_a = da.cycles.cols - rank_of(da.relations);
    int dim_b = db.cycles.cols - rank_of(db.relations);
    int rank_join = rank_of(hstack(*g, db.relations));
    int image_dim = rank_join - rank_of(db.relations);
    r.epi = (image_dim == dim_b);
    r.iso = r.epi && (dim_a == image_dim);
    return r;
}

// --------------------------------------------------------------------------

Pi0Result pi0_p(const Stratification& strat, const Perversity& p) {
    if (!leq_top(strat, p))
        fail("PerversityTooLarge", "pi0^p identification needs p <= t-bar");
    Spine sp = regular_spine(strat);
    Pi0Result r;
    r.count = sp.components;
    r.component_of_spine_vertex = sp.component_of_vertex;
    r.spine_vertex_to_simplex = sp.vertex_to_simplex;
    return r;
}

namespace {

void free_reduce(std::vector<int>& w) {
    std::vector<int> out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
    }
    while (out.size() >= 2 && out.front() == -out.back()) {
        out.erase(out.begin());
        out.pop_back();
    }
    w = std::move(out);
}

std::vector<int> inverse_word(const std::vector<int>& w) {
    std::vector<int> out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

void substitute(std::vector<std::vector<int>>& words, int gen, const std::vector<int>& repl) {
    for (auto& w : words) {
        std::vector<int> out;
        for (int x : w) {
            if (x == gen) out.insert(out.end(), repl.begin(), repl.end());
            else if (x == -gen) {
                auto inv = inverse_word(repl);
                out.insert(out.end(), inv.begin(), inv.end());
            } else out.push_back(x);
        }
        w = std::move(out);
    }
}

// Greedy Tietze simplification; true when the presentation empties out.
bool tietze_simplify(int gens, std::vector<std::vector<int>> words) {
    std::vector<char> alive(gens + 1, 1);
    size_t budget = 20000;
    for (int round = 0; round < 200; ++round) {
        size_t total = 0;
        for (auto& w : words) {
            free_reduce(w);
            total += w.size();
        }
        if (total > budget) return false;
        words.erase(std::remove_if(words.begin(), words.end(),
                                   [](const std::vector<int>& w) { return w.empty(); }),
                    words.end());
        bool acted = false;
        // length-1 relators kill their generator
        for (size_t i = 0; i < words.size() && !acted; ++i)
            if (words[i].size() == 1) {
                int g = std::abs(words[i][0]);
                substitute(words, g, {});
                alive[g] = 0;
                words.erase(words.begin() + static_cast<long>(i));
                acted = true;
            }
        // length-2 relators identify generators
        for (size_t i = 0; i < words.size() && !acted; ++i)
            if (words[i].size() == 2) {
                int x = words[i][0], y = words[i][1];
                if (std::abs(x) == std::abs(y)) continue; // g^2 = 1: not eliminable greedily
                // x y = 1 -> x = y^{-1}
                int g = std::abs(x);
                std::vector<int> repl = (x > 0) ? std::vector<int>{-y} : std::vector<int>{y};
                words.erase(words.begin() + static_cast<long>(i));
                substitute(words, g, repl);
                alive[g] = 0;
                acted = true;
            }
        // a generator occurring exactly once in some relator can be solved for
        if (!acted) {
            size_t best = 0;
            int best_gen = 0, best_pos = -1;
            for (size_t i = 0; i < words.size(); ++i) {
                std::map<int, int> count;
                for (int x : words[i]) ++count[std::abs(x)];
                for (auto [g, c] : count)
                    if (c == 1 && (best_pos < 0 || words[i].size() < best)) {
                        best = words[i].size();
                        best_gen = g;
                        best_pos = static_cast<int>(i);
                    }
            }
            if (best_pos >= 0) {
                std::vector<int> w = words[best_pos];
                size_t at = 0;
                while (std::abs(w[at]) != best_gen) ++at;
                std::rotate(w.begin(), w.begin() + static_cast<long>(at), w.end());
                int head = w[0];
                std::vector<int> tail(w.begin() + 1, w.end());
                std::vector<int> repl = (head > 0) ? inverse_word(tail) : tail;
                words.erase(words.begin() + best_pos);
                substitute(words, best_gen, repl);
                alive[best_gen] = 0;
                acted = true;
            }
        }
        if (!acted) break;
    }
    for (auto& w : words) free_reduce(w);
    bool any_words = false;
    for (auto& w : words)
        if (!w.empty()) any_words = true;
    bool any_gens = false;
    for (int g = 1; g <= gens; ++g)
        if (alive[g]) any_gens = true;
    return !any_words && !any_gens;
}

GroupPresentation presentation_of_component(const SimplicialComplex& comp) {
    GroupPresentation out;
    int nv = static_cast<int>(comp.labels().size());
    // BFS spanning tree over the 1-skeleton
    std::vector<std::vector<int>> adj(nv);
    std::map<std::pair<int, int>, int> edge_gen; // (u<v) -> generator (1-based), 0 = tree
    for (const auto& s : comp.simplices())
        if (s.dim() == 1) {
            adj[s.v[0]].push_back(s.v[1]);
            adj[s.v[1]].push_back(s.v[0]);
            edge_gen[{s.v[0], s.v[1]}] = -1;
        }
    std::vector<char> seen(nv, 0);
    std::vector<int> queue = {0};
    seen[0] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        std::sort(adj[u].begin(), adj[u].end());
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                edge_gen[{std::min(u, v), std::max(u, v)}] = 0;
                queue.push_back(v);
            }
    }
    int gen = 0;
    for (auto& [e, g] : edge_gen)
        if (g == -1) g = ++gen;
    out.generators = gen;

    auto word_of = [&](int u, int v) -> std::vector<int> {
        int g = edge_gen.at({std::min(u, v), std::max(u, v)});
        if (g == 0) return {};
        return {u < v ? g : -g};
    };
    for (const auto& s : comp.simplices())
        if (s.dim() == 2) {
            std::vector<int> w;
            auto append = [&](std::vector<int> part) {
                w.insert(w.end(), part.begin(), part.end());
            };
            append(word_of(s.v[0], s.v[1]));
            append(word_of(s.v[1], s.v[2]));
            append(word_of(s.v[2], s.v[0]));
            free_reduce(w);
            if (!w.empty()) out.relators.push_back(std::move(w));
        }

    // abelianization via the exponent-sum matrix
    IMat m(gen, static_cast<int>(out.relators.size()));
    for (size_t c = 0; c < out.relators.size(); ++c)
        for (int x : out.relators[c]) m.at(std::abs(x) - 1, static_cast<int>(c)) += (x > 0 ? 1 : -1);
    auto inv = snf_invariants(m);
    out.abelian_rank = gen - static_cast<int>(inv.size());
    for (auto v : inv)
        if (v > 1) out.abelian_torsion.push_back(v);
    std::sort(out.abelian_torsion.begin(), out.abelian_torsion.end());

    // cross-check against H1 of the same complex
    HomologyResult h = simplicial_homology(comp, Ring::Z);
    if (h.rank(1) != out.abelian_rank || h.torsion(1) != out.abelian_torsion)
        fail("AbelianizationMismatch", "edge-path abelianization disagrees with H1");

    out.tietze_trivial = tietze_simplify(gen, out.relators);
    return out;
}

} // namespace

Pi1Result pi1_regular(const Stratification& strat) {
    Spine sp = regular_spine(strat);
    Pi1Result r;
    r.connected = sp.components <= 1;
    for (int comp = 0; comp < sp.components; ++comp) {
        std::vector<int> verts;
        for (size_t v = 0; v < sp.component_of_vertex.size(); ++v)
            if (sp.component_of_vertex[v] == comp) verts.push_back(static_cast<int>(v));
        SimplicialComplex sub = full_subcomplex(sp.complex, verts);
        r.components.push_back(presentation_of_component(sub));
    }
    return r;
}

// --------------------------------------------------------------------------

namespace {

std::string fresh_label(const SimplicialComplex& x, std::string base) {
    while (x.vertex_by_label(base) >= 0) base += "x";
    return base;
}

// map each stratum of the shifted stratification back to the base stratum
// whose carriers it extends (the apex maps to -1)
std::vector<int> cone_stratum_to_base(const Stratification& cone, const Stratification& base,
                                      const std::string& apex) {
    std::vector<int> out(cone.strata().size(), -1);
    for (size_t i = 0; i < cone.strata().size(); ++i) {
        for (int id : cone.strata()[i].carrier_simplices) {
            auto labels = cone.complex().labels_of(cone.complex().simplices()[id]);
            bool pure = true;
            for (const auto& l : labels)
                if (l == apex) { pure = false; break; }
            if (!pure) continue;
            out[i] = base.stratum_of(base.complex().simplex_from_labels(labels));
            break;
        }
    }
    return out;
}

bool group_trivial(const HomologyResult& h, int k) {
    return h.rank(k) == 0 && h.torsion(k).empty();
}

} // namespace

ConeProbeReport cone_threshold_probe(const Stratification& link_strat, const Perversity& p_link,
                                     ExtInt apex_value, RingSpec ring) {
    if (ring.ring == Ring::Fp)
        fail("RingUnsupported", "threshold probes run over Z or Q");
    std::string apex = fresh_label(link_strat.complex(), "cv");
    Stratification cone = cone_stratification(link_strat, apex);
    Perversity p_cone = zero_perversity(cone);
    auto to_base = cone_stratum_to_base(cone, link_strat, apex);
    int apex_stratum = cone.stratum_of(cone.complex().simplex_from_labels({apex}));
    for (size_t i = 0; i < cone.strata().size(); ++i) {
        if (static_cast<int>(i) == apex_stratum) p_cone.values[i] = apex_value;
        else if (!cone.strata()[i].regular) p_cone.values[i] = p_link.values[to_base[i]];
    }

    ConeProbeReport r;
    r.dual_apex = top_value(cone, apex_stratum) - apex_value;

    ICComplex ic_link = intersection_chain_complex(link_strat, p_link, ring);
    ICComplex ic_cone = intersection_chain_complex(cone, p_cone, ring);
    ICComplex ic_link_in_cone = transport_ic(ic_link, cone.complex_ptr());
    HomologyResult h_link = ic_homology(ic_link);
    HomologyResult h_cone = ic_homology(ic_cone);

    int top = cone.complex().dim();
    r.observed_iso_through = -1;
    bool epi_next = false;
    for (int k = 0; k <= top; ++k) {
        InducedMap im = (ring.ring == Ring::Z) ? induced_homology_map(ic_link_in_cone, ic_cone, k)
                                               : induced_map_over_Q(ic_link_in_cone, ic_cone, k);
        if (!im.defined || !im.iso) {
            epi_next = im.defined && im.epi;
            break;
        }
        r.observed_iso_through = k;
    }
    if (r.observed_iso_through == top) epi_next = true; // nothing above to fail
    r.epi_at_next = epi_next;

    // calibrated prediction from the link side alone:
    //   degree 0: iso iff Dp(v) >= 0 or the link is p-connected (rank 1)
    //   degree k >= 1: iso iff k <= Dp(v) or IH_k(link) = 0
    bool iso0 = (ExtInt::fin(0) <= r.dual_apex) || (h_link.rank(0) == 1);
    if (!iso0) {
        r.predicted_iso_through = -1;
    } else {
        r.predicted_iso_through = 0;
        for (int k = 1; k <= top; ++k) {
            bool in_range = ExtInt::fin(k) <= r.dual_apex;
            bool link_zero = group_trivial(h_link, k) ||
                             (ring.ring == Ring::Q && h_link.rank(k) == 0);
            if (in_range || link_zero) r.predicted_iso_through = k;
            else break;
        }
    }
    r.vanishing_ok = true;
    for (int k = 1; k <= top; ++k) {
        if (ExtInt::fin(k) <= r.dual_apex) continue;
        bool zero = (ring.ring == Ring::Q) ? h_cone.rank(k) == 0 : group_trivial(h_cone, k);
        if (!zero) {
            r.vanishing_ok = false;
            r.detail += "nonvanishing IH[" + std::to_string(k) + "] above the threshold\n";
        }
    }
    r.matches = (r.observed_iso_through == r.predicted_iso_through) && r.vanishing_ok;
    r.detail += "Dp(v)=" + r.dual_apex.to_string() +
                " observed=" + std::to_string(r.observed_iso_through) +
                " predicted=" + std::to_string(r.predicted_iso_through) + "\n";
    r.detail += "link:\n" + h_link.lines("  IH") + "cone:\n" + h_cone.lines("  IH");
    return r;
}

TwoConeProbeReport two_cone_probe(int m, const Stratification& link_strat,
                                  const Perversity& p_link, ExtInt corner_value,
                                  ExtInt ring_value, RingSpec ring) {
    if (ring.ring == Ring::Fp)
        fail("RingUnsupported", "threshold probes run over Z or Q");
    Stratification join = join_sphere_stratification(m, link_strat, "ju");
    // perversity on the join: sphere-bottom strata carry the ring value later
    // (after coning), the shifted link strata keep their values
    std::string apex = fresh_label(join.complex(), "cv");
    Stratification fine = cone_stratification(join, apex);
    int apex_vertex_id = fine.complex().simplex_id(fine.complex().simplex_from_labels({apex}));
    int apex_stratum = fine.stratum_of_id(apex_vertex_id);

    // coarse side: the cone point joins the sphere-cone stratum at level m+1
    std::vector<int> carriers(fine.complex().simplices().size());
    for (size_t i = 0; i < carriers.size(); ++i)
        carriers[i] = fine.carrier_index_by_id(static_cast<int>(i));
    carriers[apex_vertex_id] = m + 1;
    Stratification coarse = build_from_carriers(fine.complex_ptr(), fine.formal_dim(),
                                                std::move(carriers));

    auto to_join = cone_stratum_to_base(fine, join, apex);
    Perversity p_fine = zero_perversity(fine);
    for (size_t i = 0; i < fine.strata().size(); ++i) {
        if (static_cast<int>(i) == apex_stratum) {
            p_fine.values[i] = corner_value;
        } else if (!fine.strata()[i].regular) {
            int j = to_join[i];
            if (fine.strata()[i].formal_dim == m + 1) {
                p_fine.values[i] = ring_value; // a component of the punctured sphere-cone
            } else {
                // shifted link stratum: recover the link stratum through the join
                int link_stratum = -1;
                for (int id : join.strata()[j].carrier_simplices) {
                    auto labels = join.complex().labels_of(join.complex().simplices()[id]);
                    bool pure = true;
                    for (const auto& l : labels)
                        if (l.rfind("ju", 0) == 0) { pure = false; break; }
                    if (!pure) continue;
                    link_stratum = link_strat.stratum_of(
                        link_strat.complex().simplex_from_labels(labels));
                    break;
                }
                p_fine.values[i] = p_link.values[link_stratum];
            }
        }
    }

    TwoConeProbeReport r;
    r.dual_corner = top_value(fine, apex_stratum) - corner_value;

    auto stratum_map = is_stratified_coarsening(fine, coarse);
    if (!stratum_map) fail("NotACoarsening", "two-cone refinement is not a coarsening");
    KCheck k = is_K_perversity(fine, coarse, *stratum_map, p_fine);
    r.k_perversity = k.ok;
    if (!k.ok) {
        r.certificate = k.certificate;
        r.bounds_ok = false;
        r.detail = "rejected: " + k.certificate;
        return r;
    }
    PushforwardResult push = pushforward(fine, coarse, *stratum_map, p_fine);
    int disk_stratum = coarse.stratum_of_id(apex_vertex_id);
    ExtInt dq_disk = top_value(coarse, disk_stratum) - push.perversity.values[disk_stratum];
    int b = m + 1;
    r.bounds_ok = (dq_disk <= r.dual_corner) && (r.dual_corner <= dq_disk + ExtInt::fin(b));
    if (!r.bounds_ok) {
        r.certificate = "corner-disk bounds fail: Dq(v)=" + dq_disk.to_string() +
                        " Dp(u,v)=" + r.dual_corner.to_string() + " b=" + std::to_string(b);
        r.detail = "rejected: " + r.certificate;
        return r;
    }

    ICComplex ic_fine = intersection_chain_complex(fine, p_fine, ring);
    ICComplex ic_coarse = intersection_chain_complex(coarse, push.perversity, ring);
    int top = fine.complex().dim();
    r.observed_iso_through = -1;
    for (int kdeg = 0; kdeg <= top; ++kdeg) {
        InducedMap im = (ring.ring == Ring::Z)
                            ? induced_homology_map(ic_fine, ic_coarse, kdeg)
                            : induced_map_over_Q(ic_fine, ic_coarse, kdeg);
        if (!im.defined || !im.iso) break;
        r.observed_iso_through = kdeg;
    }
    if (r.dual_corner.kind > 0) r.required_through = top;
    else if (!r.dual_corner.finite() || r.dual_corner.v < 0) r.required_through = -1;
    else r.required_through = std::min<long long>(r.dual_corner.v, top);
    r.matches = r.observed_iso_through >= r.required_through;
    r.detail = "Dp(u,v)=" + r.dual_corner.to_string() +
               " observed=" + std::to_string(r.observed_iso_through) +
               " required=" + std::to_string(r.required_through) + "\n";
    r.detail += "fine:\n" + ic_homology(ic_fine).lines("  IH") +
                "coarse:\n" + ic_homology(ic_coarse).lines("  IH");
    return r;
}

MvReport mv_exactness_check(const Stratification& strat, const Perversity& p,
                            const std::vector<std::vector<std::string>>& u_facets,
                            const std::vector<std::vector<std::string>>& v_facets) {
    const SimplicialComplex& x = strat.complex();
    auto mark = [&](const std::vector<std::vector<std::string>>& facets) {
        std::vector<char> keep(x.simplices().size(), 0);
        SimplicialComplex sub = build_complex(facets);
        for (const auto& s : sub.simplices()) {
            Simplex in_x;
            try {
                in_x = x.simplex_from_labels(sub.labels_of(s));
            } catch (const Error&) {
                fail("NotACover", "cover piece is not a subcomplex");
            }
            keep[x.simplex_id(in_x)] = 1;
        }
        return keep;
    };
    std::vector<char> keep_u = mark(u_facets), keep_v = mark(v_facets);
    std::vector<char> keep_uv(x.simplices().size(), 0);
    bool inter = false;
    for (size_t i = 0; i < keep_u.size(); ++i) {
        if (!keep_u[i] && !keep_v[i]) fail("NotACover", "U and V do not cover the complex");
        keep_uv[i] = keep_u[i] && keep_v[i];
        if (keep_uv[i]) inter = true;
    }
    if (!inter) fail("NotACover", "U and V have empty intersection");

    RingSpec q = RingSpec::Q();
    ICComplex icu = intersection_chain_complex_on(strat, p, q, keep_u);
    ICComplex icv = intersection_chain_complex_on(strat, p, q, keep_v);
    ICComplex icuv = intersection_chain_complex_on(strat, p, q, keep_uv);
    ICComplex icx = intersection_chain_complex(strat, p, q);

    // W = IC(U) + IC(V) as a subcomplex of the ambient chains
    ICComplex w;
    w.complex = strat.complex_ptr();
    w.ring = q;
    w.top = x.dim();
    w.embed.resize(w.top + 1);
    w.boundary.resize(w.top + 1);
    for (int k = 0; k <= w.top; ++k)
        w.embed[k] = lattice_column_basis(hstack(icu.embed[k], icv.embed[k]));
    for (int k = 0; k <= w.top; ++k) {
        if (k == 0) {
            w.boundary[0] = IMat(0, w.embed[0].cols);
            continue;
        }
        IMat d = mat_mul(boundary_matrix(x, k), w.embed[k]);
        auto expressed = solve_in_lattice(w.embed[k - 1], d);
        if (!expressed) fail("ShapeMismatch", "W is not closed under the boundary");
        w.boundary[k] = std::move(*expressed);
    }

    HomologyResult hu = ic_homology(icu), hv = ic_homology(icv), huv = ic_homology(icuv);
    HomologyResult hw = ic_homology(w), hx = ic_homology(icx);
    MvReport r;
    r.exact = true;
    for (int k = 0; k <= w.top; ++k) {
        InducedMap im = induced_map_over_Q(w, icx, k);
        bool ok = im.defined && im.iso;
        if (!ok) r.exact = false;
        r.table += "deg " + std::to_string(k) + ": IH(UnV)=" + std::to_string(huv.rank(k)) +
                   " IH(U)+IH(V)=" + std::to_string(hu.rank(k) + hv.rank(k)) +
                   " IH(X)=" + std::to_string(hx.rank(k)) +
                   " H(IC(U)+IC(V))=" + std::to_string(hw.rank(k)) +
                   (ok ? " [glue iso]" : " [GLUE FAILS]") + "\n";
    }
    return r;
}

} // namespace stratum
