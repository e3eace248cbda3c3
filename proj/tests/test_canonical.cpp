#include "atd/canonical.hpp"
#include "atd/constructions.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace atd;
using namespace atd::testing;

namespace {

// Oracle: count automorphisms by trying every permutation (tiny digraphs only).
std::size_t brute_aut_count(const Digraph &d)
{
    std::vector<Point> p(d.order());
    std::iota(p.begin(), p.end(), Point{0});
    std::size_t count = 0;
    do {
        if (is_automorphism(d, Permutation(p)))
            ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

Digraph random_digraph(std::size_t n, double density, std::mt19937_64 &rng)
{
    std::bernoulli_distribution coin(density);
    std::vector<Arc> arcs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && coin(rng))
                arcs.emplace_back(u, v);
    return build_digraph(n, arcs);
}

} // namespace

TEST_CASE("automorphism group orders of small digraphs")
{
    CHECK(automorphism_group(directed_cycle(5)).order() == 5);
    CHECK(automorphism_group(wreath(3)).order() == 24);
    CHECK(automorphism_group(complete_graph(5)).order() == 120);
    CHECK(automorphism_group(petersen()).order() == 120);
    CHECK(automorphism_group(octahedron()).order() == 48);
    CHECK(automorphism_group(cube()).order() == 48);
}

TEST_CASE("automorphism groups agree with exhaustive permutation search")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 3 + trial % 5;
        Digraph d = random_digraph(n, trial % 2 ? 0.3 : 0.5, rng);
        auto g = automorphism_group(d);
        CHECK(g.order() == brute_aut_count(d));
        for (const auto &x : g.generators())
            CHECK(is_automorphism(d, x));
    }
    CHECK(automorphism_group(cube()).order() == brute_aut_count(cube()));
}

TEST_CASE("the backtracking automorphism oracle agrees with exhaustive search")
{
    std::mt19937_64 rng(11);
    int connected = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Digraph d = random_digraph(4 + trial % 4, trial % 3 ? 0.35 : 0.55, rng);
        if (!is_connected(d))
            continue;
        ++connected;
        CHECK(brute_force_aut_order(d) == brute_aut_count(d));
    }
    CHECK(connected > 20);
    CHECK(brute_force_aut_order(cube()) == 48);
    CHECK(brute_force_aut_order(petersen()) == 120);
}

TEST_CASE("canonical form is invariant under relabelling")
{
    std::mt19937_64 rng(11);
    std::vector<Digraph> battery = {wreath(3), wreath(5), generalised_wreath(4, 2), generalised_wreath(5, 3),
                                    petersen(), cube(), octahedron()};
    for (int trial = 0; trial < 20; ++trial)
        battery.push_back(random_digraph(8 + trial % 7, 0.25, rng));
    for (const auto &d : battery) {
        auto f = canonical_form(d);
        for (int k = 0; k < 5; ++k) {
            Digraph e = relabel(d, random_labels(d.order(), rng));
            CHECK(canonical_form(e).bytes == f.bytes);
            auto iso = find_isomorphism(d, e);
            REQUIRE(iso);
            for (const auto &[u, v] : d.arcs())
                CHECK(e.has_arc((*iso)[u], (*iso)[v]));
        }
        // relabelling to canonical order reproduces the certificate, and is idempotent
        Digraph c = relabel(d, f.relabeling.images());
        CHECK(certificate_bytes(d, f.relabeling.images()) == f.bytes);
        CHECK(canonical_form(c).bytes == f.bytes);
    }
}

TEST_CASE("certificate layout is vertex count then sorted arcs, little-endian")
{
    auto f = canonical_form(directed_cycle(3));
    REQUIRE(f.bytes.size() == 4 + 3 * 8);
    CHECK(f.bytes[0] == 3);
    CHECK(f.bytes[1] == 0);
}

TEST_CASE("isomorphism and self-opposite tests")
{
    CHECK_FALSE(are_isomorphic(directed_cycle(3), directed_cycle(4)));
    CHECK_FALSE(are_isomorphic(directed_cycle(6), wreath(3)));
    CHECK_FALSE(are_isomorphic(generalised_wreath(3, 2), generalised_wreath(6, 1)));
    CHECK(canonical_form(wreath(4)).bytes == canonical_form(opposite(wreath(4))).bytes);
    CHECK(is_self_opposite(directed_cycle(5)));
    for (std::size_t n : {3, 4, 5})
        CHECK(is_self_opposite(wreath(n)));
    CHECK_FALSE(is_self_opposite(build_digraph(3, {{0, 1}, {0, 2}})));
}

TEST_CASE("automorphisms of a digraph, its opposite and its underlying graph")
{
    for (const auto &d : {wreath(4), generalised_wreath(4, 2), generalised_wreath(5, 2)}) {
        auto a = automorphism_group(d);
        auto b = automorphism_group(opposite(d));
        CHECK(a.same_group(b));
        CHECK(a.is_subgroup_of(automorphism_group(underlying_graph(d))));
    }
}

TEST_CASE("colours restrict the automorphism group")
{
    std::vector<std::uint32_t> colours = {0, 1, 0, 0, 0};
    CanonOptions o;
    o.colours = colours;
    CHECK(canonical_search(complete_graph(5), o).automorphisms.order() == 24);
}
