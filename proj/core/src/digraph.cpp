#include "atd/digraph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace atd {

Digraph::Digraph(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs))
{
    if (n_ == 0)
        throw std::invalid_argument("digraph must have at least one vertex");
    for (const auto &[u, v] : arcs_)
        if (u >= n_ || v >= n_)
            throw std::invalid_argument("arc (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") has an endpoint outside 0.." + std::to_string(n_ - 1));
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

    out_start_.assign(n_ + 1, 0);
    in_start_.assign(n_ + 1, 0);
    for (const auto &[u, v] : arcs_) {
        ++out_start_[u + 1];
        ++in_start_[v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) {
        out_start_[i + 1] += out_start_[i];
        in_start_[i + 1] += in_start_[i];
    }
    out_adj_.resize(arcs_.size());
    in_adj_.resize(arcs_.size());
    std::vector<std::size_t> out_fill(out_start_.begin(), out_start_.end() - 1);
    std::vector<std::size_t> in_fill(in_start_.begin(), in_start_.end() - 1);
    // arcs_ is sorted by (u, v), so out lists come out sorted; in lists are
    // filled in increasing tail order for the same reason.
    for (const auto &[u, v] : arcs_) {
        out_adj_[out_fill[u]++] = v;
        in_adj_[in_fill[v]++] = u;
    }

    for (const auto &[u, v] : arcs_) {
        if (u == v) {
            irreflexive_ = false;
            asymmetric_ = false;
            continue;
        }
        if (has_arc(v, u))
            asymmetric_ = false;
        else
            symmetric_ = false;
    }
}

bool Digraph::has_arc(Vertex u, Vertex v) const
{
    auto nbrs = out(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Digraph build_digraph(std::size_t n, const std::vector<Arc> &arcs)
{
    return Digraph(n, arcs);
}

Digraph opposite(const Digraph &d)
{
    std::vector<Arc> arcs;
    arcs.reserve(d.arc_count());
    for (const auto &[u, v] : d.arcs())
        arcs.emplace_back(v, u);
    return Digraph(d.order(), std::move(arcs));
}

Digraph underlying_graph(const Digraph &d)
{
    if (!d.is_irreflexive())
        throw std::invalid_argument("underlying graph requires an irreflexive digraph");
    std::vector<Arc> arcs;
    arcs.reserve(2 * d.arc_count());
    for (const auto &[u, v] : d.arcs()) {
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    return Digraph(d.order(), std::move(arcs));
}

std::size_t edge_count(const Digraph &graph)
{
    std::size_t loops = 0;
    for (const auto &[u, v] : graph.arcs())
        loops += (u == v);
    return (graph.arc_count() - loops) / 2 + loops;
}

bool is_connected(const Digraph &d)
{
    std::vector<char> seen(d.order(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        auto visit = [&](Vertex w) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        };
        for (Vertex w : d.out(v))
            visit(w);
        for (Vertex w : d.in(v))
            visit(w);
    }
    return reached == d.order();
}

ValenceProfile valence_profile(const Digraph &d)
{
    ValenceProfile p;
    for (Vertex v = 0; v < d.order(); ++v) {
        p.in_valences.push_back(d.in_valence(v));
        p.out_valences.push_back(d.out_valence(v));
    }
    std::sort(p.in_valences.begin(), p.in_valences.end());
    std::sort(p.out_valences.begin(), p.out_valences.end());
    std::size_t r = p.out_valences.front();
    bool regular = p.out_valences.back() == r && p.in_valences.front() == r && p.in_valences.back() == r;
    if (regular)
        p.regular_valence = r;
    return p;
}

std::vector<SArc> s_arcs(const Digraph &d, std::size_t s, std::size_t cap)
{
    std::vector<SArc> layer;
    for (Vertex v = 0; v < d.order(); ++v)
        layer.push_back({v});
    if (layer.size() > cap)
        throw CapExceeded("s-arc enumeration exceeds cap of " + std::to_string(cap));
    for (std::size_t step = 0; step < s; ++step) {
        std::vector<SArc> next;
        for (const auto &x : layer) {
            Vertex last = x.back();
            for (Vertex w : d.out(last)) {
                if (x.size() >= 2 && x[x.size() - 2] == w)
                    continue;
                if (next.size() >= cap)
                    throw CapExceeded("s-arc enumeration exceeds cap of " + std::to_string(cap));
                SArc y = x;
                y.push_back(w);
                next.push_back(std::move(y));
            }
        }
        layer = std::move(next);
    }
    return layer; // lexicographic: parents are sorted and out lists ascend
}

GirthBipartite girth_and_bipartite(const Digraph &graph)
{
    if (!graph.is_symmetric())
        throw std::invalid_argument("girth requires a symmetric digraph");
    if (!graph.is_irreflexive())
        throw std::invalid_argument("girth requires an irreflexive digraph");
    const std::size_t n = graph.order();
    constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
    GirthBipartite result;

    std::vector<int> colour(n, -1);
    for (Vertex s = 0; s < n; ++s) {
        if (colour[s] >= 0)
            continue;
        colour[s] = 0;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            for (Vertex w : graph.out(v)) {
                if (colour[w] < 0) {
                    colour[w] = 1 - colour[v];
                    q.push(w);
                } else if (colour[w] == colour[v]) {
                    result.bipartite = false;
                }
            }
        }
    }

    std::size_t best = unseen;
    std::vector<std::size_t> dist(n);
    std::vector<Vertex> parent(n);
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[s] = 0;
        parent[s] = s;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            if (2 * dist[v] + 1 >= best)
                break;
            for (Vertex w : graph.out(v)) {
                if (dist[w] == unseen) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push(w);
                } else if (parent[v] != w) {
                    best = std::min(best, dist[v] + dist[w] + 1);
                }
            }
        }
    }
    if (best != unseen)
        result.girth = best;
    return result;
}

Digraph relabel(const Digraph &d, std::span<const Vertex> images)
{
    if (images.size() != d.order())
        throw std::invalid_argument("relabeling has wrong length");
    std::vector<Arc> arcs;
    arcs.reserve(d.arc_count());
    for (const auto &[u, v] : d.arcs())
        arcs.emplace_back(images[u], images[v]);
    return Digraph(d.order(), std::move(arcs));
}

} // namespace atd
