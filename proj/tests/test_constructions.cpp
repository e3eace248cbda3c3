#include "atd/canonical.hpp"
#include "atd/constructions.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace atd;
using namespace atd::testing;

TEST_CASE("wreath digraphs")
{
    Digraph w = wreath(3);
    CHECK(w.order() == 6);
    CHECK(w.arc_count() == 12);
    CHECK(w.is_asymmetric());
    CHECK(valence_profile(wreath(4)).regular_valence == 2);
    CHECK(is_connected(wreath(7)));
    CHECK_THROWS_AS(wreath(2), std::invalid_argument);
}

TEST_CASE("partial line digraphs")
{
    Digraph w = wreath(3);
    CHECK(partial_line(w, 0) == w);
    CHECK(partial_line(w, 1).order() == 12);
    CHECK(are_isomorphic(partial_line(directed_cycle(3), 1), directed_cycle(3)));
    for (std::size_t r = 1; r <= 3; ++r) {
        CHECK(partial_line(w, r).order() == s_arcs(w, r).size());
        CHECK(partial_line(w, r) == partial_line(partial_line(w, r - 1), 1));
    }
}

TEST_CASE("direct W(n,r) construction equals iterated partial line digraphs")
{
    for (std::size_t n = 3; n <= 7; ++n)
        for (std::size_t r = 1; r < n && (n << r) <= 256; ++r) {
            Digraph direct = generalised_wreath(n, r);
            CHECK(direct == partial_line(wreath(n), r - 1));
            CHECK(direct.order() == (n << r));
            CHECK(valence_profile(direct).regular_valence == 2);
            CHECK(direct.is_asymmetric());
            CHECK(is_connected(direct));
        }
    CHECK(generalised_wreath(3, 1) == wreath(3));
    CHECK_THROWS_AS(generalised_wreath(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(generalised_wreath(2, 1), std::invalid_argument);
}

TEST_CASE("generalised wreath catalogue")
{
    // oracle: direct arithmetic enumeration
    auto count = [](std::size_t m) {
        std::size_t c = 0;
        for (std::size_t n = 3; n <= m; ++n)
            for (std::size_t r = 1; r + 1 <= n && r < 40; ++r)
                if ((n << r) <= m)
                    ++c;
        return c;
    };
    CHECK(gw_catalogue(6).size() == 1);
    auto ten = gw_catalogue(10);
    REQUIRE(ten.size() == 3);
    CHECK(ten[0].params == GwParams{3, 1});
    CHECK(ten[1].params == GwParams{4, 1});
    CHECK(ten[2].params == GwParams{5, 1});
    CHECK(gw_parameters(1000).size() == count(1000));
    auto cat = gw_catalogue(128);
    std::vector<std::vector<std::uint8_t>> certs;
    for (const auto &e : cat) {
        REQUIRE(e.digraph);
        CHECK(e.digraph->order() == e.params.vertex_count());
        certs.push_back(canonical_form(*e.digraph).bytes);
    }
    std::sort(certs.begin(), certs.end());
    CHECK(std::adjacent_find(certs.begin(), certs.end()) == certs.end());
    auto lazy = gw_catalogue(200, 100);
    CHECK_FALSE(lazy.back().digraph);
    CHECK(lazy.back().build().order() == lazy.back().params.vertex_count());
}

TEST_CASE("coset digraphs")
{
    PermutationGroup c3(3, {Permutation::from_cycles(3, {{0, 1, 2}})});
    auto tri = coset_digraph(c3, PermutationGroup::trivial(3), c3.generators()[0]);
    CHECK(are_isomorphic(tri.digraph, directed_cycle(3)));

    PermutationGroup s3(3, {Permutation::from_cycles(3, {{0, 1}}), Permutation::from_cycles(3, {{0, 1, 2}})});
    CHECK_THROWS_AS(coset_digraph(s3, PermutationGroup::trivial(3), Permutation::from_cycles(3, {{0, 1}})),
                    std::invalid_argument);
    // normal H is not core-free
    PermutationGroup a3(3, {Permutation::from_cycles(3, {{0, 1, 2}})});
    CHECK_THROWS_AS(coset_digraph(s3, a3, Permutation::from_cycles(3, {{0, 1}})), std::invalid_argument);

    Digraph w = wreath(3);
    auto aut = automorphism_group(w);
    auto stab = aut.stabilizer(0);
    CHECK(stab.order() == 4);
    Permutation g = shunt_recover(w, aut, 0);
    CHECK(w.has_arc(0, g[0]));
    CHECK(g.order() <= 6);
    auto cd = coset_digraph(aut, stab, g);
    CHECK(are_isomorphic(cd.digraph, w));
    CHECK(cd.labels[0].is_identity());
    // right multiplication by G acts by automorphisms
    CosetAction act(aut, stab);
    for (const auto &x : act.generator_images())
        CHECK(is_automorphism(cd.digraph, x));
    // out-valence is |HgH| / |H|
    for (Vertex v = 0; v < cd.digraph.order(); ++v)
        CHECK(cd.digraph.out_valence(v) == 2);
}

TEST_CASE("shunt recovery")
{
    Digraph c5 = directed_cycle(5);
    PermutationGroup rot(5, {Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
    CHECK(shunt_recover(c5, rot, 0)[0] == 1);
    CHECK_THROWS_AS(shunt_recover(wreath(3), PermutationGroup::trivial(6), 0), std::invalid_argument);
}
