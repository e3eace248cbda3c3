#include "atd/sym_classify.hpp"

#include "atd/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace atd {

namespace {

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
    std::vector<std::size_t> parent;
};

std::size_t arc_index(const Digraph &d, Vertex u, Vertex v)
{
    const auto &arcs = d.arcs();
    auto it = std::lower_bound(arcs.begin(), arcs.end(), Arc{u, v});
    if (it == arcs.end() || *it != Arc{u, v})
        throw std::invalid_argument("permutation is not an automorphism");
    return static_cast<std::size_t>(it - arcs.begin());
}

// Classes of any finite set under the generators, given their action on indices.
template <class Image>
std::size_t count_classes(std::size_t n, const std::vector<Permutation> &gens, Image image, std::vector<std::size_t> *labels)
{
    UnionFind uf(n);
    std::size_t classes = n;
    for (const auto &g : gens)
        for (std::size_t i = 0; i < n; ++i)
            if (uf.unite(i, image(g, i)))
                --classes;
    if (labels) {
        labels->assign(n, 0);
        std::vector<std::size_t> id(n, SIZE_MAX);
        std::size_t next = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = uf.find(i);
            if (id[r] == SIZE_MAX)
                id[r] = next++;
            (*labels)[i] = id[r];
        }
    }
    return classes;
}

std::vector<Arc> edges_of(const Digraph &graph)
{
    std::vector<Arc> e;
    for (auto [u, v] : graph.arcs())
        if (u < v)
            e.emplace_back(u, v);
    return e;
}

} // namespace

std::vector<std::size_t> arc_orbits(const Digraph &d, const std::vector<Permutation> &generators, std::size_t *orbit_count)
{
    std::vector<std::size_t> labels;
    std::size_t c = count_classes(
        d.arc_count(), generators,
        [&](const Permutation &g, std::size_t i) {
            auto [u, v] = d.arcs()[i];
            return arc_index(d, g[u], g[v]);
        },
        &labels);
    if (orbit_count)
        *orbit_count = c;
    return labels;
}

void require_automorphisms(const Digraph &d, const PermutationGroup &g)
{
    if (g.degree() != d.order())
        throw std::invalid_argument("group degree differs from the digraph order");
    for (const auto &x : g.generators())
        for (auto [u, v] : d.arcs())
            if (!d.has_arc(x[u], x[v]))
                throw std::invalid_argument("group is not a subgroup of the automorphism group");
}

SArcLevel max_s_arc_transitivity(const Digraph &d, const PermutationGroup &g, std::size_t s_cap)
{
    if (s_cap < 1)
        throw std::invalid_argument("s cap must be at least 1");
    require_automorphisms(d, g);
    if (!g.is_transitive())
        return {0, false};
    // Transitive on k-arcs and the pointwise stabiliser of one k-arc transitive
    // on its extensions means transitive on (k+1)-arcs.
    std::vector<Vertex> path{0};
    PermutationGroup stab = g.stabilizer(0);
    for (std::size_t k = 0; k < s_cap; ++k) {
        Vertex last = path.back();
        std::vector<Vertex> ext;
        for (Vertex w : d.out(last))
            if (path.size() < 2 || w != path[path.size() - 2])
                ext.push_back(w);
        if (ext.empty())
            return {k, false};
        auto orb = stab.orbit(ext.front());
        for (Vertex w : ext)
            if (!std::binary_search(orb.begin(), orb.end(), w))
                return {k, false};
        path.push_back(ext.front());
        if (k + 1 < s_cap)
            stab = stab.stabilizer(ext.front());
    }
    return {s_cap, true};
}

TransitivityFlags transitivity_flags(const Digraph &x, const PermutationGroup &g)
{
    require_automorphisms(x, g);
    TransitivityFlags f;
    f.vertex = g.is_transitive();
    std::size_t arc_classes = 0;
    arc_orbits(x, g.generators(), &arc_classes);
    f.arc = x.arc_count() > 0 && arc_classes == 1;
    const Digraph und = underlying_graph(x);
    const auto edges = edges_of(und);
    std::size_t edge_classes = count_classes(
        edges.size(), g.generators(),
        [&](const Permutation &p, std::size_t i) {
            Vertex a = p[edges[i].first], b = p[edges[i].second];
            auto it = std::lower_bound(edges.begin(), edges.end(), Arc{std::min(a, b), std::max(a, b)});
            return static_cast<std::size_t>(it - edges.begin());
        },
        nullptr);
    f.edge = !edges.empty() && edge_classes == 1;
    f.half_arc = f.vertex && f.edge && !f.arc;
    return f;
}

std::string to_string(GraphClass c)
{
    switch (c) {
    case GraphClass::arc_transitive: return "arc-transitive";
    case GraphClass::half_arc_transitive: return "half-arc-transitive";
    default: return "other";
    }
}

GraphClass classify_graph(const Digraph &gamma) { return classify_graph(gamma, automorphism_group(gamma)); }

GraphClass classify_graph(const Digraph &gamma, const PermutationGroup &aut)
{
    if (!gamma.is_symmetric())
        throw std::invalid_argument("classification needs a symmetric digraph");
    if (!is_connected(gamma))
        throw std::invalid_argument("classification needs a connected graph");
    auto f = transitivity_flags(gamma, aut);
    if (f.vertex && f.arc)
        return GraphClass::arc_transitive;
    if (f.half_arc)
        return GraphClass::half_arc_transitive;
    return GraphClass::other;
}

ArcSplit split_arc_orbits(const Digraph &gamma, const PermutationGroup &g)
{
    if (!gamma.is_symmetric() || !is_connected(gamma))
        throw std::invalid_argument("arc splitting needs a connected graph");
    auto prof = valence_profile(gamma);
    if (prof.regular_valence != std::optional<std::size_t>(4))
        throw std::invalid_argument("arc splitting needs a 4-valent graph");
    auto f = transitivity_flags(gamma, g);
    if (f.arc)
        throw std::invalid_argument("the group is arc-transitive, there is nothing to split");
    if (!f.half_arc)
        throw std::invalid_argument("the group is not vertex- and edge-transitive");
    std::size_t classes = 0;
    auto labels = arc_orbits(gamma, g.generators(), &classes);
    std::vector<Arc> first;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == 0)
            first.push_back(gamma.arcs()[i]);
    Digraph d(gamma.order(), std::move(first));
    Digraph d_opp = opposite(d);
    if (classes != 2 || !d.is_asymmetric())
        throw std::logic_error("half-arc-transitive action without two opposite arc orbits");
    return {std::move(d), std::move(d_opp)};
}

bool is_two_atd(const Digraph &d, const PermutationGroup &aut)
{
    if (!d.is_asymmetric() || !d.is_irreflexive() || !is_connected(d))
        return false;
    for (Vertex v = 0; v < d.order(); ++v)
        if (d.out_valence(v) != 2 || d.in_valence(v) != 2)
            return false;
    std::size_t classes = 0;
    arc_orbits(d, aut.generators(), &classes);
    return classes == 1 && aut.is_transitive();
}

StabiliserReport stabiliser_report(const Digraph &d)
{
    return stabiliser_report(d, automorphism_group(d), automorphism_group(underlying_graph(d)));
}

StabiliserReport stabiliser_report(const Digraph &d, const PermutationGroup &aut_d, const PermutationGroup &aut_graph)
{
    if (!is_two_atd(d, aut_d))
        throw std::invalid_argument("stabiliser report needs a connected 2-valent asymmetric arc-transitive digraph");
    if (!aut_d.is_subgroup_of(aut_graph))
        throw std::invalid_argument("Aut(D) must lie in Aut of the underlying graph");
    StabiliserReport r;
    const BigInt n = d.order();
    r.stab_order = aut_d.order() / n;
    r.stab_abelian = is_abelian(aut_d.stabilizer(0));
    r.aut_solvable = is_solvable(aut_d);
    r.index_in_graph_aut = aut_graph.order() / aut_d.order();
    if (r.index_in_graph_aut == 1) {
        r.index_to_smallest_at = 0;
        return r;
    }
    // Aut(D) is the stabiliser of the orientation, so every proper overgroup
    // swaps the two arc orbits; the smallest one is some <Aut(D), x>.
    CosetAction act(aut_graph, aut_d, 1'000'000);
    std::vector<Permutation> g_on_cosets;
    for (const auto &x : aut_d.generators())
        g_on_cosets.push_back(act.action_of(x));
    PermutationGroup on_cosets(act.index(), g_on_cosets);
    BigInt best = r.index_in_graph_aut;
    for (const auto &orb : on_cosets.orbits()) {
        if (orb.front() == 0)
            continue;
        auto gens = aut_d.generators();
        gens.push_back(act.transversal()[orb.front()]);
        BigInt idx = PermutationGroup(d.order(), gens).order() / aut_d.order();
        best = std::min(best, idx);
        if (best == 2)
            break;
    }
    r.index_to_smallest_at = best;
    return r;
}

std::string to_string(CayleyType t)
{
    switch (t) {
    case CayleyType::circ: return "Circ";
    case CayleyType::ab_cay: return "AbCay";
    case CayleyType::cay: return "Cay";
    case CayleyType::n_cay: return "nCay";
    default: return "?";
    }
}

CayleyType cayley_type(const Digraph &gamma, std::uint64_t node_budget)
{
    return cayley_type(automorphism_group(gamma), node_budget);
}

CayleyType cayley_type(const PermutationGroup &aut, std::uint64_t node_budget)
{
    if (!aut.is_transitive())
        throw std::invalid_argument("Cayley typing needs a vertex-transitive graph");
    const std::pair<RegularFlavor, CayleyType> tiers[] = {
        {RegularFlavor::cyclic, CayleyType::circ},
        {RegularFlavor::abelian, CayleyType::ab_cay},
        {RegularFlavor::any, CayleyType::cay},
    };
    bool undecided = false;
    for (auto [flavor, type] : tiers) {
        auto res = regular_subgroup_search(aut, flavor, node_budget);
        if (res.outcome == SearchOutcome::found)
            return undecided ? CayleyType::unknown : type;
        if (res.outcome == SearchOutcome::unknown)
            undecided = true;
    }
    return undecided ? CayleyType::unknown : CayleyType::n_cay;
}

namespace {

// Relabels d so that its underlying graph is exactly gamma.
Digraph onto_graph(const Digraph &gamma, const Digraph &d)
{
    auto iso = find_isomorphism(underlying_graph(d), gamma);
    if (!iso)
        throw std::invalid_argument("family member has a different underlying graph");
    std::vector<Vertex> img(iso->images().begin(), iso->images().end());
    return relabel(d, img);
}

HatStabOrders orders_of(const std::vector<Digraph> &orientations)
{
    HatStabOrders out;
    std::vector<std::vector<std::uint8_t>> seen;
    for (const auto &d : orientations) {
        auto res = canonical_search(d);
        auto opp = canonical_form(opposite(d)).bytes;
        if (std::find(seen.begin(), seen.end(), res.form.bytes) != seen.end() ||
            std::find(seen.begin(), seen.end(), opp) != seen.end())
            continue;
        seen.push_back(res.form.bytes);
        out.orders.push_back(res.automorphisms.order() / d.order());
    }
    std::sort(out.orders.begin(), out.orders.end());
    return out;
}

} // namespace

HatStabOrders maximal_hat_stab_orders(const Digraph &gamma, const std::vector<Digraph> &family, bool family_complete)
{
    // An isomorphism between two orientations of gamma is a graph
    // automorphism carrying one arc set onto the other.
    std::vector<Digraph> on_gamma;
    for (const auto &d : family)
        on_gamma.push_back(onto_graph(gamma, d));
    HatStabOrders out = orders_of(on_gamma);
    out.complete = family_complete && !family.empty();
    return out;
}

namespace {

std::vector<PermutationGroup> index_two_subgroups(const PermutationGroup &a)
{
    const std::size_t n = a.degree();
    std::vector<Permutation> squares;
    const auto &gens = a.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        squares.push_back(gens[i] * gens[i]);
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            squares.push_back(commutator(gens[i], gens[j]));
    }
    PermutationGroup frattini2 = normal_closure(a, squares);
    std::vector<Permutation> basis;
    PermutationGroup span = frattini2;
    for (const auto &g : gens)
        if (!span.contains(g)) {
            basis.push_back(g);
            auto sg = span.generators();
            sg.push_back(g);
            span = PermutationGroup(n, sg);
        }
    if (basis.size() > 16)
        throw std::length_error("too many index-2 subgroups to enumerate");
    std::vector<PermutationGroup> out;
    for (std::uint32_t mask = 1; mask < (1u << basis.size()); ++mask) {
        auto sg = frattini2.generators();
        int first_one = -1;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!(mask >> i & 1))
                sg.push_back(basis[i]);
            else if (first_one < 0)
                first_one = static_cast<int>(i);
            else
                sg.push_back(basis[static_cast<std::size_t>(first_one)] * basis[i]);
        }
        if (first_one >= 0)
            sg.push_back(basis[static_cast<std::size_t>(first_one)] * basis[static_cast<std::size_t>(first_one)]);
        out.emplace_back(n, sg);
    }
    return out;
}

} // namespace

HatStabOrders maximal_hat_stab_orders_descent(const Digraph &gamma, std::size_t depth)
{
    PermutationGroup a = automorphism_group(gamma);
    auto top = transitivity_flags(gamma, a);
    if (top.half_arc)
        return {{a.order() / gamma.order()}, true};
    std::vector<Digraph> orientations;
    std::vector<PermutationGroup> layer{a};
    for (std::size_t level = 0; level < depth && !layer.empty(); ++level) {
        std::vector<PermutationGroup> next;
        for (const auto &g : layer)
            for (auto &k : index_two_subgroups(g)) {
                auto f = transitivity_flags(gamma, k);
                if (f.half_arc)
                    orientations.push_back(split_arc_orbits(gamma, k).d);
                else if (f.arc && f.vertex)
                    next.push_back(std::move(k));
            }
        layer = std::move(next);
    }
    HatStabOrders out = orders_of(orientations);
    out.complete = false;
    return out;
}

} // namespace atd
