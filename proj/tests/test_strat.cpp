#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stratum/corpus.hpp"
#include "stratum/homology.hpp"
#include "stratum/strat.hpp"

using namespace stratum;

namespace {

ComplexPtr share(SimplicialComplex x) { return std::make_shared<SimplicialComplex>(std::move(x)); }

} // namespace

TEST_CASE("trivial filtration on the torus: one regular stratum, depth 0") {
    auto st = corpus_entry("torus7").strat("default");
    CHECK(st.strata().size() == 1);
    CHECK(st.strata()[0].regular);
    CHECK(st.depth() == 0);
    CHECK(!st.has_singular());
}

TEST_CASE("pinched torus stratification: one singular point, one regular stratum") {
    auto st = corpus_entry("pinched_torus").strat("S");
    REQUIRE(st.strata().size() == 2);
    CHECK(st.strata()[0].formal_dim == 0);
    CHECK(st.strata()[0].codim == 2);
    CHECK(!st.strata()[0].regular);
    CHECK(st.strata()[1].regular);
    CHECK(st.depth() == 1);
}

TEST_CASE("suspension of the torus: two points and a regular stratum") {
    auto st = corpus_entry("susp_torus").strat("default");
    REQUIRE(st.strata().size() == 3);
    CHECK(st.strata()[0].formal_dim == 0);
    CHECK(st.strata()[1].formal_dim == 0);
    CHECK(st.strata()[2].regular);
}

TEST_CASE("build_stratification validation errors") {
    ComplexPtr c = share(build_complex({{"a", "b"}, {"b", "x"}}));
    std::map<int, std::vector<std::vector<std::string>>> bad_nest;
    bad_nest[0] = {{"a", "b"}};
    bad_nest[1] = {{"b"}};
    CHECK_THROWS_WITH_AS(build_stratification(c, 1, bad_nest), doctest::Contains("NotNested"), Error);

    std::map<int, std::vector<std::vector<std::string>>> not_sub;
    not_sub[0] = {{"a", "x"}};
    CHECK_THROWS_WITH_AS(build_stratification(c, 1, not_sub),
                         doctest::Contains("SkeletonNotSubcomplex"), Error);

    std::map<int, std::vector<std::vector<std::string>>> total;
    total[0] = {{"a", "b"}, {"b", "x"}};
    CHECK_THROWS_WITH_AS(build_stratification(c, 1, total),
                         doctest::Contains("SingularEqualsTotal"), Error);
}

TEST_CASE("carrier index") {
    auto st = corpus_entry("pinched_torus").strat("S");
    const auto& x = st.complex();
    CHECK(st.carrier_index(x.simplex_from_labels({"p"})) == 0);
    // an edge at the pinch vertex is carried by the regular skeleton
    CHECK(st.carrier_index(x.simplex_from_labels({"p", "u0"})) == 2);
    CHECK(st.carrier_index(x.simplex_from_labels({"u0", "u1"})) == 2);
    CHECK_THROWS_WITH_AS(st.carrier_index(Simplex({99})), doctest::Contains("NotASimplex"), Error);

    auto cone = corpus_entry("example86_cone").strat("S");
    CHECK(cone.carrier_index(cone.complex().simplex_from_labels({"va"})) == 0);
}

TEST_CASE("is_stratified_coarsening") {
    auto pinched = corpus_entry("pinched_torus");
    auto s = pinched.strat("S");
    auto t = pinched.strat("T");
    auto self = is_stratified_coarsening(s, s);
    REQUIRE(self.has_value());
    for (size_t i = 0; i < s.strata().size(); ++i) CHECK((*self)[i] == static_cast<int>(i));

    auto map = is_stratified_coarsening(s, t);
    REQUIRE(map.has_value());
    CHECK(t.strata()[(*map)[0]].regular); // the pinch point lands in the regular stratum

    // reverse direction is not a coarsening: strata of S are not unions of T-strata
    CHECK(!is_stratified_coarsening(t, s).has_value());

    auto e86 = corpus_entry("example86");
    CHECK(is_stratified_coarsening(e86.strat("S"), e86.strat("R")).has_value());
    CHECK(is_stratified_coarsening(e86.strat("R"), e86.strat("T")).has_value());

    auto other = corpus_entry("torus7").strat("default");
    CHECK_THROWS_WITH_AS(is_stratified_coarsening(s, other), doctest::Contains("DifferentComplex"),
                         Error);
}

TEST_CASE("induced stratification, closed and open modes") {
    auto triv = corpus_entry("torus7").strat("default");
    std::vector<std::vector<std::string>> sub = {{"t0", "t1", "t3"}};
    auto restricted = induced_stratification(triv, sub, RestrictionMode::ClosedSubcomplex);
    CHECK(restricted.strata().size() == 1);
    CHECK(restricted.strata()[0].regular);

    // restrict the pinched torus to the closed star of the pinch vertex
    auto pinched = corpus_entry("pinched_torus").strat("S");
    std::vector<std::vector<std::string>> star;
    const auto& x = pinched.complex();
    for (const auto& f : x.facets())
        if (f.is_face_of(f) && x.labels_of(f)[0] == "p") star.push_back(x.labels_of(f));
    for (const auto& f : x.facets()) {
        auto labels = x.labels_of(f);
        bool has_p = false;
        for (auto& l : labels)
            if (l == "p") has_p = true;
        if (has_p) star.push_back(labels);
    }
    auto conelike = induced_stratification(pinched, star, RestrictionMode::ClosedSubcomplex);
    bool found_point = false;
    for (const auto& s : conelike.strata())
        if (!s.regular && s.formal_dim == 0) found_point = true;
    CHECK(found_point);

    // complement of one apex of the suspension leaves one singular point
    auto susp = corpus_entry("susp_torus").strat("default");
    auto open_part = induced_stratification(susp, {{"na"}}, RestrictionMode::OpenComplement);
    int singular_points = 0;
    for (const auto& s : open_part.strata())
        if (!s.regular) ++singular_points;
    CHECK(singular_points == 1);

    CHECK_THROWS_WITH_AS(induced_stratification(pinched, {{"p"}}, RestrictionMode::ClosedSubcomplex),
                         doctest::Contains("EmptyIntersectionWithRegularPart"), Error);
}

TEST_CASE("cone stratification") {
    auto s1 = trivial_stratification(share(simplex_boundary(1, "c")), 1);
    auto cone = cone_stratification(s1, "apex");
    CHECK(cone.formal_dim() == 2);
    REQUIRE(cone.strata().size() == 2);
    CHECK(cone.strata()[0].formal_dim == 0);
    CHECK(cone.depth() == 1);
    CHECK(cone.depth() == s1.depth() + 1);

    // apex below every other stratum
    auto c86 = corpus_entry("example86_cone").strat("S");
    int apex = c86.stratum_of(c86.complex().simplex_from_labels({"va"}));
    REQUIRE(c86.strata().size() == 4); // apex, two branches, regular
    for (size_t q = 0; q < c86.strata().size(); ++q)
        CHECK(c86.poset().leq[apex][q] == 1);
    CHECK(c86.depth() == corpus_entry("example86_cone").strat("R").depth() + 1);

    CHECK_THROWS_WITH_AS(cone_stratification(s1, "c0"), doctest::Contains("ApexCollision"), Error);
}

TEST_CASE("join sphere stratification") {
    auto s1 = trivial_stratification(share(simplex_boundary(1, "c")), 1);
    auto susp = join_sphere_stratification(0, s1, "sp");
    // S^0 keeps its two components as bottom strata
    int bottom = 0;
    for (const auto& s : susp.strata())
        if (s.formal_dim == 0) ++bottom;
    CHECK(bottom == 2);
    CHECK(susp.formal_dim() == 2);
    CHECK(susp.depth() == 1);

    auto ring = join_sphere_stratification(1, s1, "sp");
    int bottom1 = 0;
    for (const auto& s : ring.strata())
        if (s.formal_dim == 1 && !s.regular) ++bottom1;
    CHECK(bottom1 == 1);
    CHECK(ring.formal_dim() == 3);
}

TEST_CASE("point refinement") {
    auto triv = corpus_entry("s2").strat("default");
    auto refined = point_refinement(triv, "v0");
    REQUIRE(refined.strata().size() == 2);
    CHECK(refined.strata()[0].formal_dim == 0);
    CHECK_THROWS_WITH_AS(point_refinement(refined, "v0"),
                         doctest::Contains("AlreadyAPointStratum"), Error);

    // the example86 chain: S is the point refinement of R at the cone point
    auto e86 = corpus_entry("example86_cone");
    auto again = point_refinement(e86.strat("R"), "va");
    for (size_t i = 0; i < again.complex().simplices().size(); ++i)
        CHECK(again.carrier_index_by_id(static_cast<int>(i)) ==
              e86.strat("S").carrier_index_by_id(static_cast<int>(i)));

    // refining then coarsening back is a valid coarsening
    CHECK(is_stratified_coarsening(refined, triv).has_value());
}

TEST_CASE("stratum_link") {
    auto pinched = corpus_entry("pinched_torus").strat("S");
    auto lk = stratum_link(pinched, pinched.complex().simplex_from_labels({"p"}));
    // two disjoint circles: not connected, so the space is not normal there
    HomologyResult h = simplicial_homology(lk.link, Ring::Z);
    CHECK(h.rank(0) == 2);
    CHECK(h.rank(1) == 2);
    REQUIRE(lk.stratification.has_value());
    CHECK(lk.stratification->formal_dim() == 1);
    CHECK(!lk.stratification->has_singular());

    // links along X1 of the suspension model: torus at an apex, sphere at t0
    auto r = corpus_entry("example86").strat("R");
    auto lk_apex = stratum_link(r, r.complex().simplex_from_labels({"na"}));
    auto h_apex = simplicial_homology(lk_apex.link, Ring::Z);
    CHECK(h_apex.rank(1) == 2); // torus
    CHECK(h_apex.rank(2) == 1);
    auto lk_p = stratum_link(r, r.complex().simplex_from_labels({"t0"}));
    auto h_p = simplicial_homology(lk_p.link, Ring::Z);
    CHECK(h_p.rank(1) == 0); // sphere
    CHECK(h_p.rank(2) == 1);

    // the link of a cone apex is the base with its stratification
    auto c86 = corpus_entry("example86_cone");
    auto lk_va = stratum_link(c86.strat("S"), c86.strat("S").complex().simplex_from_labels({"va"}));
    REQUIRE(lk_va.stratification.has_value());
    const Stratification& base_like = *lk_va.stratification;
    CHECK(base_like.formal_dim() == 2);
    // base = torus with {t0} and {t3} singular points
    int pts = 0;
    for (const auto& s : base_like.strata())
        if (!s.regular && s.formal_dim == 0) ++pts;
    CHECK(pts == 2);

    CHECK_THROWS_WITH_AS(
        stratum_link(pinched, pinched.complex().simplex_from_labels({"u0"})),
        doctest::Contains("RegularSimplex"), Error);
}

TEST_CASE("regular spine of the pinched torus has first Betti number 1") {
    auto pinched = corpus_entry("pinched_torus").strat("S");
    Spine sp = regular_spine(pinched);
    CHECK(sp.components == 1);
    HomologyResult h = simplicial_homology(sp.complex, Ring::Z);
    CHECK(h.rank(0) == 1);
    CHECK(h.rank(1) == 1); // pi1(T minus Sigma) = Z abelianized
}

TEST_CASE("regular spine of a trivial stratification keeps the homotopy type") {
    auto triv = corpus_entry("torus7").strat("default");
    Spine sp = regular_spine(triv);
    HomologyResult hs = simplicial_homology(sp.complex, Ring::Z);
    HomologyResult hx = simplicial_homology(triv.complex(), Ring::Z);
    for (int k = 0; k <= 2; ++k) {
        CHECK(hs.rank(k) == hx.rank(k));
        CHECK(hs.torsion(k) == hx.torsion(k));
    }
}

TEST_CASE("spine of the suspension minus apexes looks like torus x interval") {
    auto susp = corpus_entry("susp_torus").strat("default");
    Spine sp = regular_spine(susp);
    CHECK(sp.components == 1);
    HomologyResult h = simplicial_homology(sp.complex, Ring::Z);
    CHECK(h.rank(0) == 1);
    CHECK(h.rank(1) == 2);
    CHECK(h.rank(2) == 1);
}

TEST_CASE("spine components match the open-star oracle on every corpus stratification") {
    for (const auto& name : corpus_names()) {
        const auto& e = corpus_entry(name);
        for (const auto& [key, st] : e.stratifications) {
            CAPTURE(name + "/" + key);
            CHECK(regular_spine(st).components == pi0_regular_by_open_stars(st));
        }
    }
}

TEST_CASE("minimal strata are exactly the closed strata") {
    for (const char* name : {"pinched_torus", "example86", "example86_cone", "depth2"}) {
        const auto& e = corpus_entry(name);
        for (const auto& [key, st] : e.stratifications) {
            for (size_t i = 0; i < st.strata().size(); ++i) {
                bool minimal = true;
                for (size_t j = 0; j < st.strata().size(); ++j)
                    if (i != j && st.poset().leq[j][i]) minimal = false;
                // closed = every face of a carrier is again a carrier of the stratum
                bool closed = true;
                for (int id : st.strata()[i].carrier_simplices) {
                    const Simplex& s = st.complex().simplices()[id];
                    for (size_t mask = 1; mask < (1ull << s.v.size()); ++mask) {
                        Simplex face;
                        for (size_t b = 0; b < s.v.size(); ++b)
                            if (mask & (1ull << b)) face.v.push_back(s.v[b]);
                        if (st.stratum_of(face) != static_cast<int>(i)) closed = false;
                    }
                }
                CAPTURE(std::string(name) + ":" + st.strata()[i].id);
                CHECK(minimal == closed);
            }
        }
    }
}

TEST_CASE("cs_diagnostics: trivial passes, suspension is normal and consistent") {
    auto d_triv = cs_diagnostics(corpus_entry("torus7").strat("default"));
    CHECK(d_triv.frontier_ok);
    CHECK(d_triv.link_consistent);
    CHECK(d_triv.normal);
    CHECK(d_triv.component_check_ok);

    auto d_susp = cs_diagnostics(corpus_entry("susp_torus").strat("default"));
    CHECK(d_susp.link_consistent);
    CHECK(d_susp.normal); // links are tori
}

TEST_CASE("cs_diagnostics: the example86 chain middle stratification fails link consistency") {
    const auto& e86 = corpus_entry("example86");
    auto d_s = cs_diagnostics(e86.strat("S"));
    CHECK(d_s.link_consistent);
    auto d_r = cs_diagnostics(e86.strat("R"));
    CHECK(!d_r.link_consistent);
    REQUIRE(!d_r.link_certificates.empty());
    auto d_t = cs_diagnostics(e86.strat("T"));
    CHECK(d_t.link_consistent);

    // pinched torus: consistent but not normal (two-circle link)
    auto d_p = cs_diagnostics(corpus_entry("pinched_torus").strat("S"));
    CHECK(d_p.link_consistent);
    CHECK(!d_p.normal);
    // codim-1 inventory on the 1-exceptional fixture
    auto d_line = cs_diagnostics(corpus_entry("line_with_point").strat("S"));
    CHECK(d_line.codim1_strata.size() == 1);
}

TEST_CASE("poset is dimension-compatible on every corpus stratification") {
    for (const auto& name : corpus_names()) {
        const auto& e = corpus_entry(name);
        for (const auto& [key, st] : e.stratifications) {
            CAPTURE(name + ":" + key);
            CHECK(st.poset().dimension_anomalies.empty());
        }
    }
}

TEST_CASE("strata partition the simplices") {
    for (const char* name : {"pinched_torus", "example86", "depth2", "two_cone"}) {
        const auto& e = corpus_entry(name);
        for (const auto& [key, st] : e.stratifications) {
            std::vector<int> seen(st.complex().simplices().size(), 0);
            for (const auto& s : st.strata())
                for (int id : s.carrier_simplices) ++seen[id];
            for (int c : seen) CHECK(c == 1);
        }
    }
}
