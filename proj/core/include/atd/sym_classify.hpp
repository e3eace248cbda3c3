#pragma once

#include "atd/digraph.hpp"
#include "atd/perm_group.hpp"

#include <string>
#include <vector>

namespace atd {

/// Orbit index of every arc of d (in d.arcs() order) under <generators>.
std::vector<std::size_t> arc_orbits(const Digraph &d, const std::vector<Permutation> &generators,
                                    std::size_t *orbit_count = nullptr);

/// Throws std::invalid_argument unless every generator of g is an automorphism of d.
void require_automorphisms(const Digraph &d, const PermutationGroup &g);

struct SArcLevel {
    std::size_t s = 0;
    bool saturated = false; // still transitive at the cap
};

/// Largest s <= s_cap such that g is transitive on the s-arcs of d.
SArcLevel max_s_arc_transitivity(const Digraph &d, const PermutationGroup &g, std::size_t s_cap = 6);

struct TransitivityFlags {
    bool vertex = false;
    bool edge = false;
    bool arc = false;
    bool half_arc = false;
};

/// Edge transitivity is measured on the edges of the underlying graph.
TransitivityFlags transitivity_flags(const Digraph &x, const PermutationGroup &g);

enum class GraphClass { arc_transitive, half_arc_transitive, other };
std::string to_string(GraphClass c);

GraphClass classify_graph(const Digraph &gamma);
GraphClass classify_graph(const Digraph &gamma, const PermutationGroup &aut);

struct ArcSplit {
    Digraph d;
    Digraph d_opp;
};
/// The two arc orbits of a half-arc-transitive action; d holds the first arc of gamma.
ArcSplit split_arc_orbits(const Digraph &gamma, const PermutationGroup &g);

/// Connected, asymmetric, 2-valent and arc-transitive under aut.
bool is_two_atd(const Digraph &d, const PermutationGroup &aut);

struct StabiliserReport {
    BigInt stab_order;
    bool stab_abelian = false;
    bool aut_solvable = false;
    BigInt index_in_graph_aut;      // |A_v : G_v|
    BigInt index_to_smallest_at = 0; // |T_v : G_v|, 0 when the underlying graph is not arc-transitive
};

StabiliserReport stabiliser_report(const Digraph &d);
StabiliserReport stabiliser_report(const Digraph &d, const PermutationGroup &aut_d, const PermutationGroup &aut_graph);

enum class CayleyType { circ, ab_cay, cay, n_cay, unknown };
std::string to_string(CayleyType t);

CayleyType cayley_type(const Digraph &gamma, std::uint64_t node_budget = 1'000'000);
CayleyType cayley_type(const PermutationGroup &aut, std::uint64_t node_budget = 1'000'000);

struct HatStabOrders {
    std::vector<BigInt> orders; // ascending
    bool complete = false;
};

/// |Aut(D)_v| for one D per {D, opposite} class of the family, up to graph
/// automorphisms. complete echoes the caller's claim and is false for an empty family.
HatStabOrders maximal_hat_stab_orders(const Digraph &gamma, const std::vector<Digraph> &family,
                                      bool family_complete);

/// Standalone mode: maximal half-arc-transitive subgroups reached from Aut(gamma)
/// through index-2 subgroups, up to the given depth. Complete only when
/// Aut(gamma) is itself half-arc-transitive.
HatStabOrders maximal_hat_stab_orders_descent(const Digraph &gamma, std::size_t depth = 3);

} // namespace atd
