#include "stratum/corpus.hpp"

#include <memory>
#include <set>

#include "stratum/homology.hpp"

namespace stratum {

const Stratification& CorpusEntry::strat(const std::string& key) const {
    auto it = stratifications.find(key);
    if (it == stratifications.end())
        fail("UsageError", "corpus entry " + name + " has no stratification '" + key + "'");
    return it->second;
}

SimplicialComplex make_torus7() {
    // Csaszar torus: vertices Z/7, triangles {i,i+1,i+3} and {i,i+2,i+3}
    std::vector<std::vector<std::string>> fs;
    auto v = [](int i) { return "t" + std::to_string(((i % 7) + 7) % 7); };
    for (int i = 0; i < 7; ++i) {
        fs.push_back({v(i), v(i + 1), v(i + 3)});
        fs.push_back({v(i), v(i + 2), v(i + 3)});
    }
    return build_complex(fs);
}

SimplicialComplex make_pinched_torus() {
    // icosahedron with poles t/b and five-vertex rings u*, l*; identifying
    // b with t pinches the sphere into the pinched torus (links of t and b
    // are disjoint, so the quotient stays simplicial)
    std::vector<std::vector<std::string>> fs;
    auto u = [](int i) { return "u" + std::to_string(((i % 5) + 5) % 5); };
    auto l = [](int i) { return "l" + std::to_string(((i % 5) + 5) % 5); };
    for (int i = 0; i < 5; ++i) {
        fs.push_back({"p", u(i), u(i + 1)});
        fs.push_back({u(i), u(i + 1), l(i)});
        fs.push_back({l(i), l(i + 1), u(i + 1)});
        fs.push_back({"p", l(i), l(i + 1)});
    }
    return build_complex(fs);
}

SimplicialComplex make_rp2_6() {
    return build_complex({{"r1", "r2", "r4"}, {"r1", "r2", "r6"}, {"r1", "r3", "r4"},
                          {"r1", "r3", "r5"}, {"r1", "r5", "r6"}, {"r2", "r3", "r6"},
                          {"r2", "r3", "r5"}, {"r2", "r4", "r5"}, {"r3", "r4", "r6"},
                          {"r4", "r5", "r6"}});
}

namespace {

ComplexPtr share(SimplicialComplex&& x) {
    return std::make_shared<SimplicialComplex>(std::move(x));
}

std::vector<std::vector<std::string>> facet_labels_of(const SimplicialComplex& x) {
    std::vector<std::vector<std::string>> out;
    for (const auto& f : x.facets()) out.push_back(x.labels_of(f));
    return out;
}

// expected-result helpers

ExpectedResult betti_vs_dense(const std::string& entry, const Stratification& st,
                              std::vector<int> want) {
    return {entry + ": Betti numbers " + entry, "derived", "dense-elimination",
            [st, want](std::string& detail) {
                HomologyResult h = simplicial_homology(st.complex(), Ring::Z);
                auto dense = betti_by_dense_elimination(st.complex());
                for (size_t k = 0; k < want.size(); ++k) {
                    if (h.rank(static_cast<int>(k)) != want[k] ||
                        dense[k] != want[k]) {
                        detail = "degree " + std::to_string(k) + ": snf=" +
                                 std::to_string(h.rank(static_cast<int>(k))) +
                                 " dense=" + std::to_string(dense[k]) +
                                 " want=" + std::to_string(want[k]);
                        return false;
                    }
                }
                return true;
            }};
}

ExpectedResult spine_vs_open_stars(const std::string& entry, const Stratification& st,
                                   int want) {
    return {entry + ": regular-part components", "derived", "open-star-adjacency",
            [st, want](std::string& detail) {
                Spine sp = regular_spine(st);
                int oracle = pi0_regular_by_open_stars(st);
                if (sp.components != oracle || sp.components != want) {
                    detail = "spine=" + std::to_string(sp.components) +
                             " oracle=" + std::to_string(oracle) + " want=" + std::to_string(want);
                    return false;
                }
                return true;
            }};
}

ExpectedResult links_vs_cofaces(const std::string& entry, const Stratification& st) {
    return {entry + ": links agree with coface enumeration", "derived", "coface-enumeration",
            [st](std::string& detail) {
                const SimplicialComplex& x = st.complex();
                for (const auto& s : x.simplices()) {
                    if (s.dim() > 1) continue; // vertices and edges cover the strata
                    auto a = link_of_simplex(x, s);
                    auto b = link_by_coface_enumeration(x, s);
                    if (!same_complex(a, b)) {
                        detail = "link mismatch at a simplex of dim " + std::to_string(s.dim());
                        return false;
                    }
                }
                return true;
            }};
}

ExpectedResult torsion_check(const std::string& entry, const Stratification& st, int degree,
                             std::vector<long long> want) {
    return {entry + ": torsion in degree " + std::to_string(degree), "derived", "smith-normal-form",
            [st, degree, want](std::string& detail) {
                HomologyResult h = simplicial_homology(st.complex(), Ring::Z);
                if (h.torsion(degree) != want) {
                    detail = "got " + h.line(degree, "H");
                    return false;
                }
                return true;
            }};
}

std::map<std::string, CorpusEntry> build_corpus() {
    std::map<std::string, CorpusEntry> out;

    // ---- spheres (trivial stratifications) --------------------------------
    for (int n = 1; n <= 4; ++n) {
        CorpusEntry e;
        e.name = "s" + std::to_string(n);
        e.description = "boundary of the " + std::to_string(n + 1) + "-simplex";
        ComplexPtr c = share(simplex_boundary(n, "v"));
        e.stratifications["default"] = trivial_stratification(c, n);
        e.declared_normal = e.declared_connected = e.declared_pre_thom_mather = true;
        std::vector<int> want(n + 1, 0);
        want[0] = 1;
        want[n] = 1;
        e.expected.push_back(betti_vs_dense(e.name, e.strat("default"), want));
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("default"), 1));
        out[e.name] = e;
    }
    {
        // refined spheres: one vertex pushed to the bottom of the filtration
        for (int n : {2, 3}) {
            CorpusEntry e;
            e.name = "s" + std::to_string(n) + "_refined";
            e.description = "sphere with one vertex as a point stratum";
            ComplexPtr c = share(simplex_boundary(n, "v"));
            Stratification triv = trivial_stratification(c, n);
            e.stratifications["T"] = triv;
            e.stratifications["S"] = point_refinement(triv, "v0");
            e.coarsening_pairs.push_back({"S", "T"});
            e.declared_normal = e.declared_connected = e.declared_pre_thom_mather = true;
            e.expected.push_back(spine_vs_open_stars(e.name, e.strat("S"), 1));
            e.expected.push_back(links_vs_cofaces(e.name, e.strat("S")));
            out[e.name] = e;
        }
    }

    // ---- 7-vertex torus ---------------------------------------------------
    {
        CorpusEntry e;
        e.name = "torus7";
        e.description = "Csaszar 7-vertex torus";
        ComplexPtr c = share(make_torus7());
        e.stratifications["default"] = trivial_stratification(c, 2);
        e.declared_normal = e.declared_connected = e.declared_pre_thom_mather = true;
        e.expected.push_back(betti_vs_dense(e.name, e.strat("default"), {1, 2, 1}));
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("default"), 1));
        e.expected.push_back(links_vs_cofaces(e.name, e.strat("default")));
        out[e.name] = e;
    }

    // ---- RP^2 (torsion path) ----------------------------------------------
    {
        CorpusEntry e;
        e.name = "rp2";
        e.description = "6-vertex projective plane";
        ComplexPtr c = share(make_rp2_6());
        e.stratifications["default"] = trivial_stratification(c, 2);
        e.declared_normal = e.declared_connected = e.declared_pre_thom_mather = true;
        e.expected.push_back(betti_vs_dense(e.name, e.strat("default"), {1, 0, 0}));
        e.expected.push_back(torsion_check(e.name, e.strat("default"), 1, {2}));
        out[e.name] = e;
    }

    // ---- pinched torus ----------------------------------------------------
    {
        CorpusEntry e;
        e.name = "pinched_torus";
        e.description = "icosahedron quotient with one pinch vertex";
        ComplexPtr c = share(make_pinched_torus());
        Stratification triv = trivial_stratification(c, 2);
        e.stratifications["T"] = triv;
        e.stratifications["S"] = point_refinement(triv, "p");
        e.coarsening_pairs.push_back({"S", "T"});
        e.declared_normal = false; // the pinch link is disconnected
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(betti_vs_dense(e.name, e.strat("S"), {1, 1, 1}));
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("S"), 1));
        e.expected.push_back(links_vs_cofaces(e.name, e.strat("S")));
        e.expected.push_back({e.name + ": pinch link is two circles", "derived",
                              "coface-enumeration",
                              [st = e.strat("S")](std::string& detail) {
                                  auto lk = link_of_simplex(st.complex(),
                                                            st.complex().simplex_from_labels({"p"}));
                                  HomologyResult h = simplicial_homology(lk, Ring::Z);
                                  if (h.rank(0) != 2 || h.rank(1) != 2) {
                                      detail = "link of p: " + h.line(0, "H") + " " + h.line(1, "H");
                                      return false;
                                  }
                                  return true;
                              }});
        out[e.name] = e;
    }

    // ---- two disjoint pinched tori ----------------------------------------
    {
        CorpusEntry e;
        e.name = "pinched_pair";
        e.description = "disjoint union of two pinched tori";
        SimplicialComplex one = make_pinched_torus();
        std::vector<std::vector<std::string>> fs = facet_labels_of(one);
        std::vector<std::vector<std::string>> copy = fs;
        for (auto& f : copy)
            for (auto& l : f) l = "q" + l;
        fs.insert(fs.end(), copy.begin(), copy.end());
        ComplexPtr c = share(build_complex(fs));
        Stratification triv = trivial_stratification(c, 2);
        Stratification fine = point_refinement(point_refinement(triv, "p"), "qp");
        e.stratifications["T"] = triv;
        e.stratifications["S"] = fine;
        e.coarsening_pairs.push_back({"S", "T"});
        e.declared_normal = false;
        e.declared_connected = false;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("S"), 2));
        out[e.name] = e;
    }

    // ---- suspension of the torus ------------------------------------------
    {
        CorpusEntry e;
        e.name = "susp_torus";
        e.description = "suspension of the 7-vertex torus, apexes na/sa";
        ComplexPtr c = share(suspension(make_torus7(), "na", "sa"));
        std::map<int, std::vector<std::vector<std::string>>> skel;
        skel[0] = {{"na"}, {"sa"}};
        e.stratifications["default"] = build_stratification(c, 3, skel);
        e.declared_normal = true;
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(betti_vs_dense(e.name, e.strat("default"), {1, 0, 2, 1}));
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("default"), 1));
        e.expected.push_back({e.name + ": apex links are tori", "derived", "coface-enumeration",
                              [st = e.strat("default")](std::string& detail) {
                                  for (const char* apex : {"na", "sa"}) {
                                      auto lk = link_of_simplex(
                                          st.complex(), st.complex().simplex_from_labels({apex}));
                                      auto oracle = link_by_coface_enumeration(
                                          st.complex(), st.complex().simplex_from_labels({apex}));
                                      HomologyResult h = simplicial_homology(lk, Ring::Z);
                                      if (!same_complex(lk, oracle) || h.rank(0) != 1 ||
                                          h.rank(1) != 2 || h.rank(2) != 1) {
                                          detail = std::string("apex ") + apex + ": " +
                                                   h.line(1, "H");
                                          return false;
                                      }
                                  }
                                  return true;
                              }});
        out[e.name] = e;
    }

    // ---- example 8.6, suspension model -------------------------------------
    {
        CorpusEntry e;
        e.name = "example86";
        e.description = "chain S -> R -> T on the suspension of the torus";
        ComplexPtr c = share(suspension(make_torus7(), "na", "sa"));
        // P = t0, Q = t3; Sigma{P,Q} is the 4-cycle through both apexes
        std::map<int, std::vector<std::vector<std::string>>> skel_s;
        skel_s[0] = {{"na"}, {"sa"}};
        skel_s[1] = {{"na", "t0"}, {"na", "t3"}, {"sa", "t0"}, {"sa", "t3"}};
        std::map<int, std::vector<std::vector<std::string>>> skel_r;
        skel_r[1] = skel_s[1];
        e.stratifications["S"] = build_stratification(c, 3, skel_s);
        e.stratifications["R"] = build_stratification(c, 3, skel_r);
        e.stratifications["T"] = trivial_stratification(c, 3);
        e.coarsening_pairs.push_back({"S", "R"});
        e.coarsening_pairs.push_back({"R", "T"});
        e.coarsening_pairs.push_back({"S", "T"});
        // neighborhood of the singular circle inside the model: suspension of
        // the disk st(t0) n st(t3); the restricted pair is a CS-coarsening
        std::vector<std::vector<std::string>> nbhd = {
            {"na", "t0", "t1", "t3"}, {"na", "t0", "t2", "t3"},
            {"sa", "t0", "t1", "t3"}, {"sa", "t0", "t2", "t3"}};
        e.stratifications["S_nbhd"] =
            induced_stratification(e.strat("S"), nbhd, RestrictionMode::ClosedSubcomplex);
        e.stratifications["R_nbhd"] =
            induced_stratification(e.strat("R"), nbhd, RestrictionMode::ClosedSubcomplex);
        e.coarsening_pairs.push_back({"S_nbhd", "R_nbhd"});
        e.declared_normal = true; // for (X, S); R is the broken middle
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("S"), 1));
        e.expected.push_back(links_vs_cofaces(e.name, e.strat("S")));
        out[e.name] = e;
    }

    // ---- example 8.6, cone model (S is a point refinement of R) ------------
    {
        CorpusEntry e;
        e.name = "example86_cone";
        e.description = "chain S -> R -> T on the cone over the torus";
        ComplexPtr c = share(cone_complex(make_torus7(), "va"));
        std::map<int, std::vector<std::vector<std::string>>> skel_r;
        skel_r[1] = {{"va", "t0"}, {"va", "t3"}};
        Stratification r = build_stratification(c, 3, skel_r);
        e.stratifications["R"] = r;
        e.stratifications["S"] = point_refinement(r, "va");
        e.stratifications["T"] = trivial_stratification(c, 3);
        e.coarsening_pairs.push_back({"S", "R"});
        e.coarsening_pairs.push_back({"R", "T"});
        e.coarsening_pairs.push_back({"S", "T"});
        std::vector<std::vector<std::string>> nbhd = {{"va", "t0", "t1", "t3"},
                                                      {"va", "t0", "t2", "t3"}};
        e.stratifications["S_nbhd"] =
            induced_stratification(e.strat("S"), nbhd, RestrictionMode::ClosedSubcomplex);
        e.stratifications["R_nbhd"] =
            induced_stratification(e.strat("R"), nbhd, RestrictionMode::ClosedSubcomplex);
        e.coarsening_pairs.push_back({"S_nbhd", "R_nbhd"});
        e.declared_normal = true;
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("S"), 1));
        out[e.name] = e;
    }

    // ---- double suspension of the torus ------------------------------------
    {
        CorpusEntry e;
        e.name = "susp2_torus";
        e.description = "double suspension of the torus; outer points refine the circle";
        ComplexPtr c = share(suspension(suspension(make_torus7(), "ia", "ib"), "oa", "ob"));
        std::map<int, std::vector<std::vector<std::string>>> skel_fine;
        skel_fine[0] = {{"oa"}, {"ob"}};
        skel_fine[1] = {{"oa", "ia"}, {"oa", "ib"}, {"ob", "ia"}, {"ob", "ib"}};
        std::map<int, std::vector<std::vector<std::string>>> skel_coarse;
        skel_coarse[1] = skel_fine[1];
        e.stratifications["S"] = build_stratification(c, 4, skel_fine);
        e.stratifications["T"] = build_stratification(c, 4, skel_coarse);
        e.coarsening_pairs.push_back({"S", "T"});
        e.declared_normal = true;
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("S"), 1));
        out[e.name] = e;
    }

    // ---- 1-exceptional negative fixture -------------------------------------
    {
        CorpusEntry e;
        e.name = "line_with_point";
        e.description = "segment with an interior point stratum of codimension 1";
        ComplexPtr c = share(build_complex({{"a", "m"}, {"m", "b"}}));
        std::map<int, std::vector<std::vector<std::string>>> skel;
        skel[0] = {{"m"}};
        e.stratifications["S"] = build_stratification(c, 1, skel);
        e.stratifications["T"] = trivial_stratification(c, 1);
        e.coarsening_pairs.push_back({"S", "T"});
        e.declared_normal = false;
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("S"), 2));
        out[e.name] = e;
    }

    // ---- two-cone / fountain fixture: cone over S^1 * S^1 -------------------
    {
        CorpusEntry e;
        e.name = "two_cone";
        e.description = "cone on the join of two circles; the apex refines the disk stratum";
        Stratification base = trivial_stratification(share(simplex_boundary(1, "c")), 1);
        Stratification join = join_sphere_stratification(1, base, "ju");
        Stratification fine = cone_stratification(join, "cv");
        // coarse: the cone point joins the sphere-cone stratum
        ComplexPtr c = fine.complex_ptr();
        std::vector<int> carriers(c->simplices().size());
        for (size_t i = 0; i < carriers.size(); ++i)
            carriers[i] = fine.carrier_index_by_id(static_cast<int>(i));
        carriers[c->simplex_id(c->simplex_from_labels({"cv"}))] = 2;
        Stratification coarse = build_from_carriers(c, fine.formal_dim(), std::move(carriers));
        e.stratifications["S"] = fine;
        e.stratifications["T"] = coarse;
        e.coarsening_pairs.push_back({"S", "T"});
        e.declared_normal = true;
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("S"), 1));
        e.expected.push_back({e.name + ": fine side is the point refinement of the coarse side",
                              "definitional", "",
                              [fine, coarse](std::string& detail) {
                                  Stratification again = point_refinement(coarse, "cv");
                                  for (size_t i = 0; i < fine.complex().simplices().size(); ++i)
                                      if (fine.carrier_index_by_id(static_cast<int>(i)) !=
                                          again.carrier_index_by_id(static_cast<int>(i))) {
                                          detail = "carrier mismatch";
                                          return false;
                                      }
                                  return true;
                              }});
        out[e.name] = e;
    }

    // ---- depth-2 coarsening fixture -----------------------------------------
    {
        CorpusEntry e;
        e.name = "depth2";
        e.description = "S^4 as a triple join with nested singular strata of depth 2";
        SimplicialComplex s1 = simplex_boundary(1, "c");
        SimplicialComplex j1 = join_complex(build_complex({{"u1"}, {"w1"}}), s1);
        SimplicialComplex j2 = join_complex(build_complex({{"u2"}, {"w2"}}), j1);
        ComplexPtr c = share(join_complex(build_complex({{"u3"}, {"w3"}}), j2));
        std::map<int, std::vector<std::vector<std::string>>> skel;
        skel[0] = {{"u3"}};
        skel[1] = {{"u2", "u3"}, {"w2", "u3"}};
        skel[2] = {{"u1", "u2", "u3"}, {"u1", "w2", "u3"}, {"w1", "u2", "u3"}, {"w1", "w2", "u3"}};
        e.stratifications["S"] = build_stratification(c, 4, skel);
        e.stratifications["T"] = trivial_stratification(c, 4);
        e.coarsening_pairs.push_back({"S", "T"});
        e.declared_normal = true;
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(spine_vs_open_stars(e.name, e.strat("S"), 1));
        out[e.name] = e;
    }

    // ---- small links for probe calibration ----------------------------------
    {
        CorpusEntry e;
        e.name = "s0";
        e.description = "two points";
        ComplexPtr c = share(build_complex({{"a"}, {"b"}}));
        e.stratifications["default"] = trivial_stratification(c, 0);
        e.declared_normal = true;
        e.declared_connected = false;
        e.declared_pre_thom_mather = true;
        out[e.name] = e;
    }
    {
        CorpusEntry e;
        e.name = "two_circles";
        e.description = "disjoint union of two triangles";
        ComplexPtr c = share(disjoint_union(simplex_boundary(1, "a"), simplex_boundary(1, "b")));
        e.stratifications["default"] = trivial_stratification(c, 1);
        e.declared_normal = true;
        e.declared_connected = false;
        e.declared_pre_thom_mather = true;
        e.expected.push_back(betti_vs_dense(e.name, e.strat("default"), {2, 2}));
        out[e.name] = e;
    }
    {
        CorpusEntry e;
        e.name = "point";
        e.description = "a single vertex";
        ComplexPtr c = share(build_complex({{"pt"}}));
        e.stratifications["default"] = trivial_stratification(c, 0);
        e.declared_normal = true;
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        out[e.name] = e;
    }

    // ---- symbolic-only entry: example83 ------------------------------------
    {
        CorpusEntry e;
        e.name = "example83";
        e.description = "double suspension of the Poincare sphere (symbolic)";
        e.symbolic_only = true;
        e.declared_normal = true;
        e.declared_connected = true;
        e.declared_pre_thom_mather = true;
        out[e.name] = e;
    }

    return out;
}

} // namespace

const std::map<std::string, CorpusEntry>& corpus() {
    static const std::map<std::string, CorpusEntry> c = build_corpus();
    return c;
}

const CorpusEntry& corpus_entry(const std::string& name) {
    const auto& c = corpus();
    auto it = c.find(name);
    if (it == c.end()) fail("UsageError", "no corpus entry named " + name);
    return it->second;
}

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& [name, entry] : corpus()) out.push_back(name);
    return out;
}

} // namespace stratum
