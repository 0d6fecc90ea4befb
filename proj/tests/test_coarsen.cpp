#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stratum/coarsen.hpp"
#include "stratum/corpus.hpp"

using namespace stratum;

namespace {

Coarsening corpus_coarsening(const std::string& entry, const std::string& fine,
                             const std::string& coarse) {
    const auto& e = corpus_entry(entry);
    return build_coarsening(e.strat(fine), e.strat(coarse));
}

int count_class(const Coarsening& c, StratumClass cls) {
    int n = 0;
    for (auto k : c.classification)
        if (k == cls) ++n;
    return n;
}

} // namespace

TEST_CASE("identity coarsening: everything is a source") {
    auto s = corpus_entry("pinched_torus").strat("S");
    Coarsening c = build_coarsening(s, s);
    CHECK(c.is_identity());
    CHECK(count_class(c, StratumClass::Source) == 1);
    CHECK(count_class(c, StratumClass::RegularSource) == 1);
    CHECK(!c.has_exceptional());
    CHECK(is_simple(c)); // empty exceptional/fountain subposet
}

TEST_CASE("pinched torus to trivial: the pinch point is exceptional, not 1-exceptional") {
    Coarsening c = corpus_coarsening("pinched_torus", "S", "T");
    CHECK(count_class(c, StratumClass::Exceptional) == 1);
    CHECK(count_class(c, StratumClass::OneExceptional) == 0);
    CHECK(c.has_exceptional());
    CHECK(!c.has_one_exceptional());
    CHECK(is_simple(c));
}

TEST_CASE("1-exceptional classification on the line fixture") {
    Coarsening c = corpus_coarsening("line_with_point", "S", "T");
    CHECK(count_class(c, StratumClass::OneExceptional) == 1);
    CHECK(c.has_one_exceptional());
}

TEST_CASE("fountain and source classification") {
    // two_cone: the refined cone point sits inside the singular disk stratum
    Coarsening c = corpus_coarsening("two_cone", "S", "T");
    CHECK(count_class(c, StratumClass::Fountain) == 1);
    CHECK(count_class(c, StratumClass::Source) == 1);
    CHECK(!c.has_exceptional());

    // point refinement inside a positive-dimensional singular stratum is a
    // fountain; refining a regular stratum gives an exceptional point
    Coarsening r = corpus_coarsening("s2_refined", "S", "T");
    CHECK(count_class(r, StratumClass::Exceptional) == 1);

    // the example86 chain: the apexes/cone point become fountains over the circle
    Coarsening e86 = corpus_coarsening("example86", "S", "R");
    CHECK(count_class(e86, StratumClass::Fountain) == 2);
    CHECK(count_class(e86, StratumClass::Source) == 2);
    CHECK(!e86.has_exceptional());
}

TEST_CASE("every coarse stratum admits a source stratum") {
    for (const auto& name : corpus_names()) {
        const auto& e = corpus_entry(name);
        for (const auto& [fine, coarse] : e.coarsening_pairs) {
            Coarsening c = build_coarsening(e.strat(fine), e.strat(coarse));
            std::vector<char> has_source(c.coarse.strata().size(), 0);
            for (size_t i = 0; i < c.fine.strata().size(); ++i)
                if (c.fine.strata()[i].formal_dim == c.coarse.strata()[c.stratum_map[i]].formal_dim)
                    has_source[c.stratum_map[i]] = 1;
            for (char h : has_source) CHECK(h == 1);
            // source strata are dimension-maximal among the preimages
            for (size_t i = 0; i < c.fine.strata().size(); ++i)
                CHECK(c.fine.strata()[i].formal_dim <=
                      c.coarse.strata()[c.stratum_map[i]].formal_dim);
        }
    }
}

TEST_CASE("depth-2 fixture is not simple; chain of two simple steps") {
    Coarsening c = corpus_coarsening("depth2", "S", "T");
    CHECK(exceptional_fountain_depth(c) == 2);
    CHECK(!is_simple(c));

    auto chain = simple_chain(c);
    REQUIRE(chain.size() == 2);
    for (const auto& step : chain) CHECK(is_simple(step));
    // the chain composes to the original coarsening
    CHECK(same_complex(chain.front().fine.complex(), c.fine.complex()));
    for (size_t i = 0; i < c.fine.strata().size(); ++i) {
        int carrier = c.fine.strata()[i].carrier_simplices[0];
        CHECK(c.coarse.stratum_of_id(carrier) == c.stratum_map[i]);
    }
}

TEST_CASE("simple_chain on easy cases") {
    auto s = corpus_entry("pinched_torus").strat("S");
    Coarsening id = build_coarsening(s, s);
    CHECK(simple_chain(id).empty());

    Coarsening c = corpus_coarsening("pinched_torus", "S", "T");
    auto chain = simple_chain(c);
    REQUIRE(chain.size() == 1);
    CHECK(is_simple(chain[0]));
}

TEST_CASE("build_Se absorbs exceptional strata") {
    // no exceptional strata: S_e = S
    Coarsening f = corpus_coarsening("two_cone", "S", "T");
    SeDecomposition d = build_Se(f);
    CHECK(d.iota_e.is_identity());
    CHECK(d.se.strata().size() == f.fine.strata().size());

    // pinched torus: the exceptional point is absorbed, S_e is trivial
    Coarsening c = corpus_coarsening("pinched_torus", "S", "T");
    SeDecomposition dp = build_Se(c);
    CHECK(dp.se.strata().size() == 1);
    CHECK(dp.iota_sigma.is_identity());
    CHECK(!dp.iota_sigma.has_exceptional());
    // factorization property (i): surviving singular strata become sources
    for (size_t i = 0; i < c.fine.strata().size(); ++i)
        if (c.classification[i] == StratumClass::Source ||
            c.classification[i] == StratumClass::Fountain)
            CHECK(dp.iota_e.classification[i] == StratumClass::Source);

    // depth2: all singular strata exceptional, S_e trivial
    Coarsening c2 = corpus_coarsening("depth2", "S", "T");
    SeDecomposition d2 = build_Se(c2);
    CHECK(d2.se.strata().size() == 1);

    // mixed: example86_cone S -> T composed with nothing exceptional is
    // covered above; here check idempotence on the S_e -> T leg
    SeDecomposition d3 = build_Se(d2.iota_sigma);
    CHECK(d3.iota_e.is_identity());
    CHECK(d3.se.strata().size() == d2.se.strata().size());
}

TEST_CASE("theorem hypothesis report") {
    // identity coarsening with a K-perversity <= t-bar: Theorem A applies
    auto s = corpus_entry("susp_torus").strat("default");
    Coarsening id = build_coarsening(s, s);
    TheoremReport r = theorem_hypothesis_report(id, zero_perversity(s), true, nullptr);
    CHECK(r.k_perversity);
    CHECK(r.below_top);
    CHECK(!r.exceptional_present);
    CHECK(r.theorem_A);

    // pinched torus to trivial: exceptional stratum blocks Theorem A; the
    // space is not normal, so Theorem B is blocked too regardless of links
    Coarsening c = corpus_coarsening("pinched_torus", "S", "T");
    TheoremReport rp = theorem_hypothesis_report(
        c, zero_perversity(c.fine), true,
        +[](const Coarsening&, const Perversity&, int stratum) {
            return LinkFactStatus{stratum, "Trivial", "stub"};
        });
    CHECK(!rp.theorem_A);
    CHECK(rp.exceptional_present);
    CHECK(!rp.normal);
    CHECK(!rp.theorem_B);
    REQUIRE(rp.link_facts.size() == 1);
    CHECK(rp.link_facts[0].status == "Trivial");

    // sphere refinement: normal + connected + trivial link fact => Theorem B
    Coarsening cs = corpus_coarsening("s3_refined", "S", "T");
    Perversity p = zero_perversity(cs.fine);
    TheoremReport rs = theorem_hypothesis_report(
        cs, p, true,
        +[](const Coarsening&, const Perversity&, int stratum) {
            return LinkFactStatus{stratum, "Trivial", "stub"};
        });
    CHECK(rs.k_perversity);
    CHECK(rs.below_top);
    CHECK(rs.theorem_B);
    CHECK(!rs.theorem_A);
}

TEST_CASE("classification totality") {
    for (const auto& name : corpus_names()) {
        const auto& e = corpus_entry(name);
        for (const auto& [fine, coarse] : e.coarsening_pairs) {
            Coarsening c = build_coarsening(e.strat(fine), e.strat(coarse));
            CHECK(c.classification.size() == c.fine.strata().size());
        }
    }
}
