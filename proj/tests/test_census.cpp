#include "atd/canonical.hpp"
#include "atd/census.hpp"
#include "atd/constructions.hpp"
#include "atd/io.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace atd;
using namespace atd::testing;

namespace {

Digraph drop_arc(const Digraph &d, Arc a)
{
    std::vector<Arc> arcs;
    for (auto x : d.arcs())
        if (x != a)
            arcs.push_back(x);
    return Digraph(d.order(), arcs);
}

const CensusResult &census12()
{
    static const CensusResult res = [] {
        CensusConfig cfg;
        cfg.m = 12;
        return run_census(cfg);
    }();
    return res;
}

std::size_t log2_exact(const BigInt &x)
{
    std::size_t k = 0;
    BigInt y = x;
    while (y > 1) {
        REQUIRE(y % 2 == 0);
        y /= 2;
        ++k;
    }
    return k;
}

} // namespace

TEST_CASE("census parameters")
{
    CHECK(census_t(32) == 1);
    CHECK(census_t(8) == 0);
    CHECK(census_t(1000) == 5);
    CHECK(default_s_range(32) == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK(default_s_range(1000) == std::vector<std::size_t>{1, 2, 3, 4, 5});
    CHECK(census_name("ATD", 32, 2) == "ATD[32,2]");
    CHECK(census_name("HAT", 27, 1, ';') == "HAT[27;1]");
}

TEST_CASE("verify 2-ATD")
{
    CHECK(verify_2atd(generalised_wreath(3, 1)).ok);
    auto w32 = generalised_wreath(3, 2);
    auto broken = verify_2atd(drop_arc(w32, w32.arcs().front()));
    CHECK_FALSE(broken.ok);
    CHECK(broken.reason.find("valence") != std::string::npos);
    CHECK_FALSE(verify_2atd(directed_cycle(6)).ok);
    CHECK_FALSE(verify_2atd(octahedron()).ok);
    // two disjoint copies of W_3
    std::vector<Arc> two;
    const Digraph w3 = wreath(3);
    for (auto [u, v] : w3.arcs()) {
        two.push_back({u, v});
        two.push_back({u + 6, v + 6});
    }
    auto split = verify_2atd(Digraph(12, two));
    CHECK_FALSE(split.ok);
    CHECK(split.reason == "not connected");
}

TEST_CASE("generalised wreath identification")
{
    for (const auto &e : gw_catalogue(48)) {
        std::mt19937_64 rng(e.params.vertex_count());
        auto d = relabel(*e.digraph, random_labels(e.digraph->order(), rng));
        auto id = identify_gw(d);
        REQUIRE(id.has_value());
        CHECK(*id == e.params);
    }
    CHECK_FALSE(identify_gw(directed_cycle(12)).has_value());
}

TEST_CASE("census seeds and small runs")
{
    CensusConfig gw;
    gw.m = 10;
    gw.quotients = false;
    auto only = run_census(gw);
    CHECK(only.entries.size() == 3);
    CHECK_FALSE(only.complete);

    CensusConfig six;
    six.m = 6;
    auto r6 = run_census(six);
    REQUIRE(r6.entries.size() == 1);
    CHECK(brute_force_isomorphic(r6.entries[0].digraph, generalised_wreath(3, 1)));
    CHECK(r6.entries[0].record.is_gw);
    CHECK(r6.complete);
}

TEST_CASE("census of order at most 12")
{
    const auto &res = census12();
    REQUIRE(res.complete);
    CHECK(res.cells.size() == 7);
    const auto &es = res.entries;

    // contains every generalised wreath digraph
    for (const auto &g : gw_catalogue(12)) {
        bool found = false;
        for (const auto &e : es)
            found |= brute_force_isomorphic(e.digraph, *g.digraph);
        CHECK(found);
    }
    for (std::size_t i = 0; i < es.size(); ++i) {
        const auto &d = es[i].digraph;
        const auto &r = es[i].record;
        CHECK(d.order() <= 12);
        CHECK(verify_2atd(d).ok);
        for (std::size_t j = i + 1; j < es.size(); ++j)
            CHECK_FALSE(brute_force_isomorphic(d, es[j].digraph));
        std::size_t opp = es.size();
        for (std::size_t j = 0; j < es.size(); ++j)
            if (brute_force_isomorphic(opposite(d), es[j].digraph))
                opp = j;
        REQUIRE(opp < es.size());
        CHECK(r.opposite_name == es[opp].record.name);
        CHECK(r.self_opposite == (opp == i));
        if (r.self_opposite)
            CHECK(r.underlying_at);
        CHECK(log2_exact(r.stab_order) == r.s);
        // tight implies exponent 1; the converse also admits a single doubly traversed cycle (a = 2 * radius)
        if (r.attachment_type == AttachmentType::tight)
            CHECK(r.alt_exponent == 1);
        if (r.alt_exponent == 1)
            CHECK((r.attachment_type == AttachmentType::tight || r.attachment == 2 * r.radius));
        CHECK(r.is_gw == identify_gw(d).has_value());
    }
    // serials are dense within an order
    for (std::size_t i = 1; i < es.size(); ++i) {
        if (es[i].record.order == es[i - 1].record.order)
            CHECK(es[i].serial == es[i - 1].serial + 1);
        else
            CHECK(es[i].serial == 1);
    }
}

TEST_CASE("census output does not depend on the number of jobs")
{
    CensusConfig cfg;
    cfg.m = 12;
    cfg.jobs = 3;
    auto par = run_census(cfg);
    CHECK(atd_csv(par.entries) == atd_csv(census12().entries));
    CHECK(ghat_csv(par.ghat) == ghat_csv(census12().ghat));
    CHECK(hat_csv(par.hat) == hat_csv(census12().hat));
}

TEST_CASE("census budgets abort with the cell named")
{
    CensusConfig cfg;
    cfg.m = 40;
    try {
        run_census(cfg);
        FAIL("expected the index cap to trip");
    } catch (const CensusBudgetExceeded &e) {
        CHECK(e.cell() == "A_4^1");
    }
    cfg.m = 12;
    cfg.node_budget = 50;
    CHECK_THROWS_AS(run_census(cfg), CensusBudgetExceeded);
    cfg.node_budget = 1'000'000;
    cfg.s_range = {6};
    CHECK_THROWS_AS(run_census(cfg), std::invalid_argument);
}

TEST_CASE("catalogue census")
{
    CensusConfig cfg;
    cfg.m = 6;
    std::vector<NamedGroup> wr{{"C2wrC3", automorphism_group(wreath(3))}};
    REQUIRE(wr[0].group.order() == 24);
    auto res = catalog_census(wr, cfg);
    REQUIRE(res.entries.size() == 1);
    CHECK(brute_force_isomorphic(res.entries[0].digraph, wreath(3)));
    CHECK_FALSE(res.complete);

    std::vector<NamedGroup> c4{{"C4", PermutationGroup(4, {Permutation({1, 2, 3, 0})})}};
    cfg.m = 100;
    CHECK(catalog_census(c4, cfg).entries.empty());

    auto groups = read_group_catalog(read_text_file(std::string(ATD_DATA_DIR) + "/groups-336.txt"));
    REQUIRE(groups.size() == 3);
    cfg.m = 42;
    cfg.s_range = {3};
    auto r42 = catalog_census(groups, cfg);
    bool found = false;
    for (const auto &e : r42.entries) {
        const auto &r = e.record;
        if (r.order == 42 && !r.stab_abelian && r.stab_order == 8 && r.self_opposite && r.s >= 3 && r.radius == 3)
            found = true;
    }
    CHECK(found);
}

TEST_CASE("GHAT and HAT derivation")
{
    auto w3 = wreath(3);
    auto res = assemble_census({w3, opposite(w3)});
    REQUIRE(res.entries.size() == 1);
    REQUIRE(res.ghat.size() == 1);
    CHECK(res.hat.empty());
    const auto &g = res.ghat[0];
    REQUIRE(g.gw.has_value());
    CHECK(g.name == "GWD(3,1)");
    CHECK(g.a_stab == 48 / 6);
    REQUIRE(g.consistent.has_value());
    CHECK(g.consistent->size() == 3);
    CHECK(res.entries[0].record.underlying_name == "GWD(3,1)");

    // the smallest half-arc-transitive graph arises at order 27 from s = 1
    CensusConfig cfg;
    cfg.m = 27;
    cfg.s_range = {1};
    auto r27 = run_census(cfg);
    std::size_t hat_count = 0;
    for (const auto &e : r27.entries) {
        auto und = underlying_graph(e.digraph);
        bool half = classify_graph(und) == GraphClass::half_arc_transitive;
        CHECK(half == (e.record.underlying_name.rfind("HAT[", 0) == 0));
        hat_count += half && e.record.order == 27;
    }
    CHECK(hat_count > 0);
    REQUIRE(r27.hat.size() == 1);
    CHECK(r27.hat[0].name == "HAT[27,1]");
    CHECK(r27.hat[0].order == 27);
}
