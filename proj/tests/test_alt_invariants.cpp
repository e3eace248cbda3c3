#include "atd/alt_invariants.hpp"
#include "atd/canonical.hpp"
#include "atd/constructions.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace atd;
using namespace atd::testing;

namespace {

std::vector<Digraph> battery()
{
    std::vector<Digraph> out;
    for (const auto &e : gw_catalogue(200))
        out.push_back(*e.digraph);
    return out;
}

PermutationGroup setwise_stabiliser(const PermutationGroup &g, const std::vector<std::size_t> &labels, std::size_t cls)
{
    // the classes form a block system; stabilise the block of the class
    std::vector<Permutation> gens;
    Vertex rep = static_cast<Vertex>(std::find(labels.begin(), labels.end(), cls) - labels.begin());
    PermutationGroup gb = g.with_base_prefix({rep});
    std::vector<Permutation> out = gb.stabilizer(rep).generators();
    for (Vertex v = 0; v < labels.size(); ++v)
        if (labels[v] == cls && v != rep && gb.in_basic_orbit(0, v))
            out.push_back(gb.transversal(0, v));
    return PermutationGroup(g.degree(), out);
}

} // namespace

TEST_CASE("walk signatures")
{
    auto w3 = wreath(3);
    auto w = walk_signature(w3, {0, 2});
    CHECK(w.signature == std::vector<int>{1});
    CHECK(w.tolerance_min == 0);
    CHECK(w.tolerance_max == 1);
    auto back = walk_signature(w3, {0, 2, 1});
    CHECK(back.signature == std::vector<int>{1, -1});
    CHECK(back.partial_sums.back() == 0);
    auto empty = walk_signature(w3, {4});
    CHECK(empty.tolerance_min == 0);
    CHECK(empty.tolerance_max == 0);
    CHECK_THROWS_AS(walk_signature(w3, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(walk_signature(octahedron(), {0, 2}), std::invalid_argument);
}

TEST_CASE("alternating cycles")
{
    auto w3 = alternating_cycles(wreath(3));
    CHECK(w3.cycle_count() == 3);
    CHECK(w3.radius == 2);
    CHECK(w3.attachment == 2);
    CHECK(w3.type == AttachmentType::tight);

    auto w32 = alternating_cycles(generalised_wreath(3, 2));
    CHECK(w32.radius == 2);
    CHECK(w32.attachment == 1);
    CHECK(w32.type == AttachmentType::loose);
    CHECK(w32.cycle_count() == 6);

    auto ra = radius_attachment(generalised_wreath(4, 1));
    CHECK(ra.radius == 2);
    CHECK(ra.attachment == 2);
    CHECK(ra.type == AttachmentType::tight);

    for (const auto &d : battery()) {
        auto s = alternating_cycles(d);
        // every arc on one cycle, every vertex on two
        std::multiset<Arc> arcs;
        std::vector<int> per_vertex(d.order(), 0);
        for (const auto &c : s.cycles) {
            CHECK(c.size() == 2 * s.radius);
            for (std::size_t i = 0; i < c.size(); i += 2) {
                arcs.insert({c[i], c[i + 1]});
                arcs.insert({c[(i + 2) % c.size()], c[i + 1]});
            }
            for (Vertex v : c)
                ++per_vertex[v];
        }
        CHECK(arcs == std::multiset<Arc>(d.arcs().begin(), d.arcs().end()));
        CHECK(std::all_of(per_vertex.begin(), per_vertex.end(), [](int k) { return k == 2; }));
        CHECK((2 * s.radius) % s.attachment == 0);
        CHECK(s.uniform);
    }
    CHECK_THROWS_AS(alternating_cycles(directed_cycle(5)), std::invalid_argument);
}

TEST_CASE("alter classes match the walk-state oracle")
{
    auto w3 = wreath(3);
    auto c1 = alter_classes(w3, 1);
    CHECK(c1 == std::vector<std::size_t>{0, 0, 1, 1, 2, 2});
    CHECK(alter_classes(w3, 2) == c1);
    auto c4 = directed_cycle(4);
    for (std::size_t t = 0; t < 4; ++t)
        CHECK(alter_classes(c4, t) == std::vector<std::size_t>{0, 1, 2, 3});

    for (const auto &d : battery())
        for (std::size_t t = 1; t <= 5; ++t)
            CHECK(alter_classes(d, t) == alter_oracle(d, t));
}

TEST_CASE("alter invariants")
{
    for (std::size_t n = 3; n <= 7; ++n) {
        auto a = alter_invariants(wreath(n));
        CHECK(a.exponent == 1);
        CHECK(a.perimeter == n);
        CHECK(a.sequence == std::vector<std::size_t>{2});
    }
    auto w32 = alter_invariants(generalised_wreath(3, 2));
    CHECK(w32.exponent == 2);
    CHECK(w32.perimeter == 3);
    CHECK(w32.sequence == std::vector<std::size_t>{2, 4});
    auto c6 = alter_invariants(directed_cycle(6));
    CHECK(c6.exponent == 0);
    CHECK(c6.perimeter == 6);
    CHECK(c6.sequence.empty());

    for (const auto &d : battery()) {
        auto aut = automorphism_group(d);
        auto a = alter_invariants(d, aut);
        CHECK(a.canonical);
        // stabilisation a few steps past the exponent
        auto at_e = alter_classes(d, a.exponent);
        for (std::size_t k = 2; k <= 4; ++k)
            CHECK(alter_classes(d, a.exponent + k) == at_e);
        for (std::size_t i = 1; i < a.sequence.size(); ++i)
            CHECK(a.sequence[i - 1] <= a.sequence[i]);
        for (auto x : a.sequence)
            CHECK(d.order() % x == 0);
        auto opp = alter_invariants(opposite(d), aut);
        CHECK(opp.exponent == a.exponent);
        CHECK(opp.perimeter == a.perimeter);
        CHECK(opp.sequence == a.sequence);
        // tight exactly when the exponent is 1
        CHECK((radius_attachment(d).type == AttachmentType::tight) == (a.exponent == 1));
        // classes are blocks; the block stabiliser is normal with cyclic quotient
        for (const auto &g : aut.generators()) {
            for (Vertex u = 0; u < d.order(); ++u)
                for (Vertex v = 0; v < d.order(); ++v)
                    if (at_e[u] == at_e[v])
                        CHECK(at_e[g[u]] == at_e[g[v]]);
        }
        auto block = setwise_stabiliser(aut, at_e, at_e[0]);
        CHECK(is_normal(aut, block));
        CHECK(aut.order() / block.order() == a.perimeter);
        bool cyclic = false;
        for (const auto &g : aut.generators()) {
            // some element permutes the blocks in one cycle
            std::size_t steps = 0;
            std::size_t c = at_e[0];
            do {
                Vertex rep = static_cast<Vertex>(std::find(at_e.begin(), at_e.end(), c) - at_e.begin());
                c = at_e[g[rep]];
                ++steps;
            } while (c != at_e[0] && steps <= a.perimeter);
            cyclic |= steps == a.perimeter;
        }
        CHECK(cyclic);
    }
}

TEST_CASE("consistent cycles")
{
    auto k5 = complete_graph(5);
    auto orbits = consistent_cycles(k5, automorphism_group(k5));
    REQUIRE(orbits.size() == 3);
    CHECK(orbits[0].length == 3);
    CHECK(orbits[1].length == 4);
    CHECK(orbits[2].length == 5);
    for (const auto &o : orbits) {
        CHECK(o.symmetric);
        CHECK(certifies_consistency(o.representative, o.shunt));
    }

    auto oct = octahedron();
    CHECK(consistent_cycles(oct, automorphism_group(oct)).size() == 3);
    auto chiral = consistent_cycles(oct, automorphism_group(wreath(3)));
    REQUIRE(chiral.size() == 4);
    for (const auto &o : chiral) {
        CHECK_FALSE(o.symmetric);
        CHECK(certifies_consistency(o.representative, o.shunt));
    }
    // chiral orbits pair up with their inverses
    std::multiset<std::size_t> lengths;
    for (const auto &o : chiral)
        lengths.insert(o.length);
    for (auto l : lengths)
        CHECK(lengths.count(l) % 2 == 0);

    for (const auto &d : battery()) {
        auto aut = automorphism_group(d);
        if (aut.order() / d.order() > 1 << 14)
            continue;
        CHECK(consistent_cycles(underlying_graph(d), aut).size() == 4);
    }
    CHECK_THROWS_AS(consistent_cycles(k5, automorphism_group(k5), 5), EnumerationCapExceeded);
}
