#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace atd {

using Vertex = std::uint32_t;
using Arc = std::pair<Vertex, Vertex>;

/// Finite digraph on the vertex set {0, ..., n-1}.
///
/// The arc relation is stored as a sorted, duplicate-free list together with
/// sorted out- and in-neighbour lists. Instances are immutable once built.
class Digraph {
public:
    Digraph() = default;

    /// Builds a digraph from an arc list; duplicate arcs collapse.
    /// Throws std::invalid_argument when n == 0 or an endpoint is >= n.
    Digraph(std::size_t n, std::vector<Arc> arcs);

    std::size_t order() const { return n_; }
    std::size_t arc_count() const { return arcs_.size(); }
    const std::vector<Arc> &arcs() const { return arcs_; }

    std::span<const Vertex> out(Vertex v) const
    {
        return {out_adj_.data() + out_start_[v], out_adj_.data() + out_start_[v + 1]};
    }
    std::span<const Vertex> in(Vertex v) const
    {
        return {in_adj_.data() + in_start_[v], in_adj_.data() + in_start_[v + 1]};
    }
    std::size_t out_valence(Vertex v) const { return out_start_[v + 1] - out_start_[v]; }
    std::size_t in_valence(Vertex v) const { return in_start_[v + 1] - in_start_[v]; }

    bool has_arc(Vertex u, Vertex v) const;

    bool is_symmetric() const { return symmetric_; }
    bool is_asymmetric() const { return asymmetric_; }
    bool is_irreflexive() const { return irreflexive_; }

    friend bool operator==(const Digraph &a, const Digraph &b)
    {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::size_t> out_start_, in_start_;
    std::vector<Vertex> out_adj_, in_adj_;
    bool symmetric_ = true;
    bool asymmetric_ = true;
    bool irreflexive_ = true;
};

/// An s-arc (v_0, ..., v_s): consecutive pairs are arcs, no immediate reversal.
using SArc = std::vector<Vertex>;

struct ValenceProfile {
    std::vector<std::size_t> in_valences;  // sorted multiset
    std::vector<std::size_t> out_valences; // sorted multiset
    std::optional<std::size_t> regular_valence;
};

struct GirthBipartite {
    std::optional<std::size_t> girth; // empty for forests
    bool bipartite = true;
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_sarc_cap = 10'000'000;

Digraph build_digraph(std::size_t n, const std::vector<Arc> &arcs);

Digraph opposite(const Digraph &d);

/// Symmetrisation of an irreflexive digraph. Throws on loops.
Digraph underlying_graph(const Digraph &d);

/// Number of unordered edges of a symmetric digraph.
std::size_t edge_count(const Digraph &graph);

bool is_connected(const Digraph &d);

ValenceProfile valence_profile(const Digraph &d);

/// All s-arcs, in lexicographic order of their vertex tuples.
std::vector<SArc> s_arcs(const Digraph &d, std::size_t s, std::size_t cap = default_sarc_cap);

/// Girth and bipartiteness of a symmetric, irreflexive digraph.
GirthBipartite girth_and_bipartite(const Digraph &graph);

/// Image of d under the vertex map v -> images[v].
Digraph relabel(const Digraph &d, std::span<const Vertex> images);

} // namespace atd
