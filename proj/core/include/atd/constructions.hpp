#pragma once

#include "atd/digraph.hpp"
#include "atd/perm_group.hpp"

#include <optional>
#include <vector>

namespace atd {

Digraph wreath(std::size_t n);

/// Pl^r(D): vertices are the r-arcs of D in lexicographic order, arcs join
/// each r-arc to its successors. Pl^0(D) = D.
Digraph partial_line(const Digraph &d, std::size_t r, std::size_t cap = default_sarc_cap);

/// W(n, r) = Pl^{r-1}(W_n), built directly: vertex (i; a_0..a_{r-1}) has
/// index i*2^r + (a_0 a_1 .. a_{r-1} read as a binary number).
Digraph generalised_wreath(std::size_t n, std::size_t r);

struct GwParams {
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t vertex_count() const { return n << r; }
    bool arc_transitive() const { return n >= r + 1; }
    friend bool operator==(const GwParams &, const GwParams &) = default;
};

struct GwEntry {
    GwParams params;
    std::optional<Digraph> digraph; // absent above the build threshold
    Digraph build() const { return digraph ? *digraph : generalised_wreath(params.n, params.r); }
};

/// Arc-transitive generalised wreath digraphs on at most m vertices, sorted
/// by (vertex count, n, r). Digraphs larger than build_threshold are left
/// as parameters.
std::vector<GwEntry> gw_catalogue(std::size_t m, std::size_t build_threshold = 100'000);
/// Parameters only.
std::vector<GwParams> gw_parameters(std::size_t m);

struct CosetDigraph {
    Digraph digraph;
    std::vector<Permutation> labels; // coset representative of each vertex
};

/// Cos(G, H, g) on the right cosets of H; arcs (Hx, Hy) with y x^-1 in HgH.
/// Throws std::invalid_argument unless H is core-free, g^-1 is not in HgH
/// and <H, g> = G.
CosetDigraph coset_digraph(const PermutationGroup &g, const PermutationGroup &h, const Permutation &shunt,
                           std::size_t index_cap = 100'000);

/// Some element of g mapping v to an out-neighbour of v, of order at most |V(d)|.
Permutation shunt_recover(const Digraph &d, const PermutationGroup &g, Vertex v);

} // namespace atd
