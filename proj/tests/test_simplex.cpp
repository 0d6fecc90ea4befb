#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stratum/ihom.hpp"
#include "stratum/simplex.hpp"

using namespace stratum;

TEST_CASE("build_complex closes under faces and prunes dominated facets") {
    auto c = build_complex({{"0", "1"}, {"1", "2"}, {"1"}});
    CHECK(c.dim() == 1);
    CHECK(c.simplices().size() == 5); // {0},{1},{2},{01},{12}
    CHECK(c.facets().size() == 2);
    CHECK(c.has_simplex(c.simplex_from_labels({"0"})));

    auto single = build_complex({{"0"}});
    CHECK(single.dim() == 0);
    CHECK(single.simplices().size() == 1);

    CHECK_THROWS_WITH_AS(build_complex({}), doctest::Contains("EmptyInput"), Error);
    CHECK_THROWS_WITH_AS(build_complex({{"a", "a"}}), doctest::Contains("DuplicateVertexInFace"), Error);
}

TEST_CASE("tetrahedron boundary counts") {
    auto s2 = simplex_boundary(2, "v");
    auto f = s2.f_vector();
    CHECK(f == std::vector<int>{4, 6, 4});
    CHECK(s2.euler_characteristic() == 2);
}

TEST_CASE("cone complexes are collapsible and grow dimension by one") {
    auto two_pts = build_complex({{"a"}, {"b"}});
    auto path = cone_complex(two_pts, "apex");
    CHECK(path.dim() == 1);
    CHECK(path.facets().size() == 2);

    auto disk = cone_complex(simplex_boundary(1, "t"), "c");
    CHECK(disk.dim() == 2);
    auto h = simplicial_homology(disk, Ring::Z);
    CHECK(h.rank(0) == 1);
    CHECK(h.rank(1) == 0);
    CHECK(h.rank(2) == 0);

    CHECK_THROWS_WITH_AS(cone_complex(two_pts, "a"), doctest::Contains("ApexCollision"), Error);
}

TEST_CASE("euler characteristic of every cone is 1") {
    std::vector<SimplicialComplex> bases = {
        simplex_boundary(1, "a"), simplex_boundary(2, "b"), cycle_complex(5, "c"),
        build_complex({{"x"}, {"y"}, {"z"}})};
    for (const auto& base : bases) {
        auto cone = cone_complex(base, "apex");
        CHECK(cone.euler_characteristic() == 1);
    }
}

TEST_CASE("joins: S0 * S0 is a 4-cycle, suspension of S1 is S2") {
    auto s0a = build_complex({{"a0"}, {"a1"}});
    auto s0b = build_complex({{"b0"}, {"b1"}});
    auto square = join_complex(s0a, s0b);
    CHECK(square.dim() == 1);
    CHECK(square.f_vector() == std::vector<int>{4, 4});

    auto s1 = simplex_boundary(1, "t");
    auto s2 = suspension(s1, "n", "s");
    auto h = simplicial_homology(s2, Ring::Z);
    CHECK(h.rank(0) == 1);
    CHECK(h.rank(1) == 0);
    CHECK(h.rank(2) == 1);
    CHECK(h.torsion(1).empty());

    // join with a point is the cone
    auto pt = build_complex({{"p"}});
    auto j = join_complex(s1, pt);
    auto c = cone_complex(s1, "p");
    CHECK(same_complex(j, c));
}

TEST_CASE("join is associative at the f-vector level") {
    auto a = build_complex({{"a0"}, {"a1"}});
    auto b = simplex_boundary(1, "b");
    auto c = build_complex({{"c0", "c1"}});
    auto left = join_complex(join_complex(a, b), c);
    auto right = join_complex(a, join_complex(b, c));
    CHECK(left.f_vector() == right.f_vector());
}

TEST_CASE("barycentric subdivision counts and carriers") {
    auto edge = build_complex({{"a", "b"}});
    auto sd_edge = barycentric_subdivision(edge);
    CHECK(sd_edge.sd.f_vector() == std::vector<int>{3, 2});

    auto tri = build_complex({{"a", "b", "c"}});
    auto sd_tri = barycentric_subdivision(tri);
    CHECK(sd_tri.sd.f_vector() == std::vector<int>{7, 12, 6});

    // chain carrier is the largest simplex of the chain
    auto top = sd_tri.sd.simplex_from_labels({"a", "a.b", "a.b.c"});
    int car = sd_simplex_carrier(sd_tri, top);
    CHECK(tri.simplices()[car].dim() == 2);
}

TEST_CASE("subdivision preserves homology on the tetrahedron boundary") {
    auto s2 = simplex_boundary(2, "v");
    auto sd = barycentric_subdivision(s2);
    auto h1 = simplicial_homology(s2, Ring::Z);
    auto h2 = simplicial_homology(sd.sd, Ring::Z);
    for (int k = 0; k <= 2; ++k) {
        CHECK(h1.rank(k) == h2.rank(k));
        CHECK(h1.torsion(k) == h2.torsion(k));
    }
}

TEST_CASE("links") {
    auto s1 = simplex_boundary(1, "t"); // triangle boundary
    auto lk = link_of_simplex(s1, s1.simplex_from_labels({"t0"}));
    CHECK(lk.f_vector() == std::vector<int>{2});

    auto s2 = simplex_boundary(2, "v");
    auto lkv = link_of_simplex(s2, s2.simplex_from_labels({"v0"}));
    CHECK(lkv.f_vector() == std::vector<int>{3, 3}); // triangle boundary

    auto oct = suspension(simplex_boundary(1, "e"), "n", "s"); // octahedron-like S2
    auto lke = link_of_simplex(oct, oct.simplex_from_labels({"n", "e0"}));
    CHECK(lke.f_vector() == std::vector<int>{2});

    // top simplex has empty link, reported as a value
    auto full = build_complex({{"a", "b", "c"}});
    auto lkt = link_of_simplex(full, full.simplex_from_labels({"a", "b", "c"}));
    CHECK(lkt.simplices().empty());

    CHECK_THROWS_WITH_AS(link_of_simplex(s1, Simplex({0, 1, 2})), doctest::Contains("NotASimplex"), Error);
}

TEST_CASE("link of cone apex recovers the base") {
    auto base = simplex_boundary(2, "v");
    auto cone = cone_complex(base, "apex");
    auto lk = link_of_simplex(cone, cone.simplex_from_labels({"apex"}));
    CHECK(lk.f_vector() == base.f_vector());
    for (const auto& f : base.facets()) {
        auto labels = base.labels_of(f);
        CHECK_NOTHROW(lk.simplex_from_labels(labels));
    }
}

TEST_CASE("facet-based link agrees with the coface-enumeration oracle") {
    std::vector<SimplicialComplex> complexes = {
        simplex_boundary(2, "v"), suspension(simplex_boundary(1, "e"), "n", "s"),
        cone_complex(cycle_complex(4, "c"), "a")};
    for (const auto& x : complexes)
        for (const auto& s : x.simplices()) {
            auto a = link_of_simplex(x, s);
            auto b = link_by_coface_enumeration(x, s);
            CHECK(same_complex(a, b));
        }
}

TEST_CASE("disjoint union and collision detection") {
    auto a = cycle_complex(3, "a");
    auto b = cycle_complex(3, "b");
    auto u = disjoint_union(a, b);
    CHECK(u.f_vector() == std::vector<int>{6, 6});
    CHECK_THROWS_WITH_AS(disjoint_union(a, a), doctest::Contains("VertexCollision"), Error);
    CHECK_THROWS_WITH_AS(join_complex(a, a), doctest::Contains("VertexCollision"), Error);
}

TEST_CASE("cone over the 7-vertex torus has 8 vertices and 14 tetrahedra") {
    std::vector<std::vector<std::string>> fs;
    auto v = [](int i) { return "t" + std::to_string(((i % 7) + 7) % 7); };
    for (int i = 0; i < 7; ++i) {
        fs.push_back({v(i), v(i + 1), v(i + 3)});
        fs.push_back({v(i), v(i + 2), v(i + 3)});
    }
    auto torus = build_complex(fs);
    auto cone = cone_complex(torus, "a");
    CHECK(cone.labels().size() == 8);
    CHECK(cone.facets().size() == 14);
    CHECK(cone.dim() == 3);
    CHECK(cone.euler_characteristic() == 1);
}

#include "stratum/corpus.hpp"

TEST_CASE("subdivision preserves homology on the small corpus complexes") {
    // dense Smith normal form keeps this test to complexes whose subdivisions
    // stay small; the larger suspensions are covered degreewise elsewhere
    for (const char* name : {"s1", "s2", "s3", "rp2", "torus7", "pinched_torus", "two_circles",
                             "line_with_point"}) {
        const auto& e = corpus_entry(name);
        const auto& st = e.stratifications.count("default") ? e.strat("default") : e.strat("S");
        const SimplicialComplex& x = st.complex();
        auto sd = barycentric_subdivision(x);
        HomologyResult h1 = simplicial_homology(x, Ring::Z);
        HomologyResult h2 = simplicial_homology(sd.sd, Ring::Z);
        for (int k = 0; k <= x.dim(); ++k) {
            CAPTURE(name); CAPTURE(k);
            CHECK(h1.rank(k) == h2.rank(k));
            CHECK(h1.torsion(k) == h2.torsion(k));
        }
    }
}
