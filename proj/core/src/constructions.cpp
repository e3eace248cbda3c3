#include "atd/constructions.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace atd {

Digraph wreath(std::size_t n)
{
    if (n < 3)
        throw std::invalid_argument("wreath digraph needs n >= 3");
    std::vector<Arc> arcs;
    arcs.reserve(4 * n);
    for (Vertex i = 0; i < n; ++i) {
        Vertex j = static_cast<Vertex>((i + 1) % n);
        for (Vertex a = 0; a < 2; ++a)
            for (Vertex b = 0; b < 2; ++b)
                arcs.emplace_back(2 * i + a, 2 * j + b);
    }
    return Digraph(2 * n, std::move(arcs));
}

Digraph partial_line(const Digraph &d, std::size_t r, std::size_t cap)
{
    if (r == 0)
        return d;
    std::vector<SArc> verts = s_arcs(d, r, cap);
    if (verts.empty())
        throw std::invalid_argument("partial line digraph would have no vertices");
    std::vector<Arc> arcs;
    SArc next(r + 1);
    for (std::size_t x = 0; x < verts.size(); ++x) {
        const SArc &a = verts[x];
        std::copy(a.begin() + 1, a.end(), next.begin());
        for (Vertex w : d.out(a.back())) {
            if (w == a[r - 1])
                continue;
            next[r] = w;
            auto it = std::lower_bound(verts.begin(), verts.end(), next);
            arcs.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(it - verts.begin()));
        }
    }
    return Digraph(verts.size(), std::move(arcs));
}

Digraph generalised_wreath(std::size_t n, std::size_t r)
{
    if (n < 3 || r < 1 || r > n - 1)
        throw std::invalid_argument("W(n,r) needs n >= 3 and 1 <= r <= n-1 (got n=" + std::to_string(n) +
                                    ", r=" + std::to_string(r) + ")");
    if (r >= 31 || (n << r) > (std::size_t{1} << 31))
        throw std::invalid_argument("W(n,r) too large");
    const std::size_t layer = std::size_t{1} << r;
    const std::size_t mask = layer - 1;
    std::vector<Arc> arcs;
    arcs.reserve(2 * n * layer);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        for (std::size_t b = 0; b < layer; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                arcs.emplace_back(static_cast<Vertex>(i * layer + b), static_cast<Vertex>(j * layer + (((b << 1) & mask) | c)));
    }
    Digraph d(n * layer, std::move(arcs));
    if (d.order() != n * layer)
        throw std::logic_error("W(n,r) vertex count mismatch");
    return d;
}

std::vector<GwParams> gw_parameters(std::size_t m)
{
    std::vector<GwParams> out;
    for (std::size_t n = 3; 2 * n <= m; ++n)
        for (std::size_t r = 1; r <= n - 1 && r < 63 && (n << r) <= m; ++r) {
            GwParams p{n, r};
            if (p.arc_transitive())
                out.push_back(p);
        }
    std::sort(out.begin(), out.end(), [](const GwParams &a, const GwParams &b) {
        return std::tuple(a.vertex_count(), a.n, a.r) < std::tuple(b.vertex_count(), b.n, b.r);
    });
    return out;
}

std::vector<GwEntry> gw_catalogue(std::size_t m, std::size_t build_threshold)
{
    std::vector<GwEntry> out;
    for (const auto &p : gw_parameters(m)) {
        GwEntry e{p, std::nullopt};
        if (p.vertex_count() <= build_threshold)
            e.digraph = generalised_wreath(p.n, p.r);
        out.push_back(std::move(e));
    }
    return out;
}

CosetDigraph coset_digraph(const PermutationGroup &g, const PermutationGroup &h, const Permutation &shunt,
                           std::size_t index_cap)
{
    if (!g.contains(shunt))
        throw std::invalid_argument("shunt is not an element of G");
    CosetAction act(g, h, index_cap);
    const std::size_t n = act.index();

    PermutationGroup image(n, act.generator_images());
    if (image.order() != g.order())
        throw std::invalid_argument("H is not core-free in G");
    std::vector<Permutation> hg = h.generators();
    hg.push_back(shunt);
    if (PermutationGroup(g.degree(), hg).order() != g.order())
        throw std::invalid_argument("<H, g> is a proper subgroup of G");

    // Out-neighbours of H: the cosets H g h, i.e. the H-orbit of Hg.
    std::vector<Permutation> h_on_cosets;
    for (const auto &x : h.generators())
        h_on_cosets.push_back(act.action_of(x));
    std::vector<char> in_orbit(n, 0);
    std::vector<Point> base_out{static_cast<Point>(act.coset_of(shunt))};
    in_orbit[base_out[0]] = 1;
    for (std::size_t k = 0; k < base_out.size(); ++k)
        for (const auto &x : h_on_cosets) {
            Point y = x[base_out[k]];
            if (!in_orbit[y]) {
                in_orbit[y] = 1;
                base_out.push_back(y);
            }
        }
    if (in_orbit[act.coset_of(shunt.inverse())])
        throw std::invalid_argument("g^-1 lies in HgH, the coset digraph would not be asymmetric");

    // out(Hx) = out(H) x, pushed along the enumeration tree.
    std::vector<std::vector<Point>> images(n);
    images[0] = base_out;
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const auto &parent = images[act.parent(i)];
            const Permutation &gen = act.generator_images()[act.tree_generator(i)];
            images[i].reserve(parent.size());
            for (Point y : parent)
                images[i].push_back(gen[y]);
        }
        for (Point y : images[i])
            arcs.emplace_back(static_cast<Vertex>(i), y);
    }
    return {Digraph(n, std::move(arcs)), act.transversal()};
}

Permutation shunt_recover(const Digraph &d, const PermutationGroup &g, Vertex v)
{
    if (g.degree() != d.order())
        throw std::invalid_argument("group degree differs from digraph order");
    PermutationGroup gb = g.with_base_prefix({v});
    const std::uint64_t limit = d.order();
    std::optional<Permutation> found;
    for (Vertex w : d.out(v)) {
        if (!gb.in_basic_orbit(0, w))
            continue;
        const Permutation &t = gb.transversal(0, w);
        if (t.order() <= limit)
            return t;
        PermutationGroup stab = gb.stabilizer(v);
        stab.for_each_element([&](const Permutation &x) {
            Permutation y = x * t;
            if (y.order() <= limit) {
                found = std::move(y);
                return false;
            }
            return true;
        });
        if (found)
            return *found;
    }
    throw std::invalid_argument("the group contains no shunt at vertex " + std::to_string(v) +
                                " of order at most " + std::to_string(limit));
}

} // namespace atd
