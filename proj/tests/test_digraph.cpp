#include "atd/digraph.hpp"

#include <doctest.h>

using namespace atd;

namespace {

Digraph directed_cycle(std::size_t n)
{
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < n; ++i)
        arcs.emplace_back(i, (i + 1) % n);
    return build_digraph(n, arcs);
}

Digraph petersen()
{
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < 5; ++i) {
        arcs.emplace_back(i, (i + 1) % 5);
        arcs.emplace_back(i, i + 5);
        arcs.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return underlying_graph(build_digraph(10, arcs));
}

} // namespace

TEST_CASE("arcs are deduplicated and out-of-range endpoints rejected")
{
    Digraph d = build_digraph(3, {{0, 1}, {0, 1}, {1, 2}});
    CHECK(d.arc_count() == 2);
    CHECK_THROWS_AS(build_digraph(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(build_digraph(0, {}), std::invalid_argument);
}

TEST_CASE("opposite reverses arcs and is an involution")
{
    Digraph d = directed_cycle(5);
    Digraph o = opposite(d);
    CHECK(o.has_arc(1, 0));
    CHECK_FALSE(o.has_arc(0, 1));
    CHECK(opposite(o) == d);
}

TEST_CASE("underlying graph symmetrises and refuses loops")
{
    Digraph u = underlying_graph(directed_cycle(4));
    CHECK(u.is_symmetric());
    CHECK(edge_count(u) == 4);
    CHECK_THROWS_AS(underlying_graph(build_digraph(2, {{0, 0}})), std::invalid_argument);
}

TEST_CASE("connectivity is weak connectivity")
{
    CHECK(is_connected(directed_cycle(6)));
    CHECK_FALSE(is_connected(build_digraph(4, {{0, 1}, {2, 3}})));
    CHECK(is_connected(build_digraph(3, {{0, 1}, {2, 1}})));
}

TEST_CASE("valence profile reports regular valence")
{
    auto p = valence_profile(directed_cycle(7));
    REQUIRE(p.regular_valence);
    CHECK(*p.regular_valence == 1);
    auto q = valence_profile(build_digraph(3, {{0, 1}, {0, 2}}));
    CHECK_FALSE(q.regular_valence);
}

TEST_CASE("s-arcs of the Petersen graph")
{
    Digraph p = petersen();
    // 10 * 3 * 2^(s-1) s-arcs in a cubic graph
    CHECK(s_arcs(p, 1).size() == 30);
    CHECK(s_arcs(p, 3).size() == 120);
    auto a = s_arcs(p, 2);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK_THROWS_AS(s_arcs(p, 3, 100), CapExceeded);
}

TEST_CASE("girth and bipartiteness")
{
    auto gp = girth_and_bipartite(petersen());
    CHECK(gp.girth == 5);
    CHECK_FALSE(gp.bipartite);
    auto c6 = girth_and_bipartite(underlying_graph(directed_cycle(6)));
    CHECK(c6.girth == 6);
    CHECK(c6.bipartite);
    auto tree = girth_and_bipartite(underlying_graph(build_digraph(3, {{0, 1}, {1, 2}})));
    CHECK_FALSE(tree.girth);
    CHECK_THROWS_AS(girth_and_bipartite(directed_cycle(3)), std::invalid_argument);
}
