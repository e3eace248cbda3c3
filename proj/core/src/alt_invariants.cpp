#include "atd/alt_invariants.hpp"

#include "atd/canonical.hpp"
#include "atd/sym_classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace atd {

Walk walk_signature(const Digraph &d, const std::vector<Vertex> &vertices)
{
    if (!d.is_asymmetric())
        throw std::invalid_argument("walk signatures need an asymmetric digraph");
    if (vertices.empty())
        throw std::invalid_argument("a walk has at least one vertex");
    Walk w;
    w.vertices = vertices;
    w.partial_sums.push_back(0);
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        Vertex a = vertices[i - 1], b = vertices[i];
        if (a >= d.order() || b >= d.order())
            throw std::invalid_argument("walk vertex out of range");
        int e;
        if (d.has_arc(a, b))
            e = 1;
        else if (d.has_arc(b, a))
            e = -1;
        else
            throw std::invalid_argument("walk steps between non-adjacent vertices " + std::to_string(a) + " and " +
                                        std::to_string(b));
        w.signature.push_back(e);
        w.partial_sums.push_back(w.partial_sums.back() + e);
    }
    auto [lo, hi] = std::minmax_element(w.partial_sums.begin(), w.partial_sums.end());
    w.tolerance_min = *lo;
    w.tolerance_max = *hi;
    return w;
}

std::string to_string(AttachmentType t)
{
    switch (t) {
    case AttachmentType::loose: return "loose";
    case AttachmentType::antipodal: return "antipodal";
    case AttachmentType::tight: return "tight";
    default: return "other";
    }
}

namespace {

void require_two_valent(const Digraph &d)
{
    if (!d.is_asymmetric() || !is_connected(d))
        throw std::invalid_argument("alternating cycles need a connected asymmetric digraph");
    for (Vertex v = 0; v < d.order(); ++v)
        if (d.out_valence(v) != 2 || d.in_valence(v) != 2)
            throw std::invalid_argument("alternating cycles need in- and out-valence 2");
}

Vertex other(std::span<const Vertex> pair, Vertex x) { return pair[0] == x ? pair[1] : pair[0]; }

} // namespace

AlternatingStructure alternating_cycles(const Digraph &d)
{
    require_two_valent(d);
    const auto &arcs = d.arcs();
    std::vector<char> used(arcs.size(), 0);
    auto idx = [&](Vertex u, Vertex w) {
        return static_cast<std::size_t>(std::lower_bound(arcs.begin(), arcs.end(), Arc{u, w}) - arcs.begin());
    };
    AlternatingStructure s;
    for (std::size_t start = 0; start < arcs.size(); ++start) {
        if (used[start])
            continue;
        // tail u -> head w, then the other in-arc of w, then the other out-arc of its tail
        std::vector<Vertex> cyc;
        auto [u, w] = arcs[start];
        while (true) {
            used[idx(u, w)] = 1;
            cyc.push_back(u);
            cyc.push_back(w);
            Vertex u2 = other(d.in(w), u);
            used[idx(u2, w)] = 1;
            Vertex w2 = other(d.out(u2), w);
            u = u2;
            w = w2;
            if (Arc{u, w} == arcs[start])
                break;
        }
        s.cycles.push_back(std::move(cyc));
    }

    s.radius = s.cycles.front().size() / 2;
    std::vector<std::vector<std::size_t>> through(d.order());
    for (std::size_t c = 0; c < s.cycles.size(); ++c) {
        if (s.cycles[c].size() != 2 * s.radius)
            s.uniform = false;
        std::set<Vertex> distinct(s.cycles[c].begin(), s.cycles[c].end());
        if (distinct.size() != s.cycles[c].size())
            s.doubly_traversed = true;
        for (Vertex v : distinct)
            through[v].push_back(c);
    }
    if (s.doubly_traversed) {
        s.attachment = 2 * s.radius;
        s.type = AttachmentType::other;
        return s;
    }
    std::set<std::size_t> meets;
    for (Vertex v = 0; v < d.order(); ++v) {
        if (through[v].size() != 2)
            throw std::logic_error("vertex not on exactly two alternating cycles");
        const auto &a = s.cycles[through[v][0]], &b = s.cycles[through[v][1]];
        std::set<Vertex> sa(a.begin(), a.end());
        std::size_t common = 0;
        for (Vertex x : std::set<Vertex>(b.begin(), b.end()))
            common += sa.count(x);
        meets.insert(common);
    }
    if (meets.size() != 1)
        s.uniform = false;
    s.attachment = *meets.begin();
    if (!s.uniform)
        s.type = AttachmentType::other;
    else if (s.attachment == s.radius)
        s.type = AttachmentType::tight;
    else if (s.attachment == 2)
        s.type = AttachmentType::antipodal;
    else if (s.attachment == 1)
        s.type = AttachmentType::loose;
    else
        s.type = AttachmentType::other;
    return s;
}

RadiusAttachment radius_attachment(const Digraph &d)
{
    auto s = alternating_cycles(d);
    return {s.radius, s.attachment, s.type};
}

std::vector<std::size_t> alter_classes(const Digraph &d, std::size_t t)
{
    if (!d.is_asymmetric())
        throw std::invalid_argument("alter classes need an asymmetric digraph");
    const std::size_t n = d.order(), levels = t + 1;
    // layered graph on V x {0..t}: (v,k) ~ (w,k+1) for every arc v -> w
    std::vector<std::size_t> comp(n * levels, SIZE_MAX);
    std::vector<std::size_t> label(n, SIZE_MAX);
    std::size_t next = 0;
    std::vector<std::size_t> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] != SIZE_MAX)
            continue;
        std::size_t id = next++;
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            auto v = static_cast<Vertex>(x % n);
            std::size_t k = x / n;
            auto visit = [&](std::size_t y) {
                if (comp[y] == SIZE_MAX) {
                    comp[y] = id;
                    stack.push_back(y);
                }
            };
            if (k + 1 < levels)
                for (Vertex w : d.out(v))
                    visit((k + 1) * n + w);
            if (k > 0)
                for (Vertex u : d.in(v))
                    visit((k - 1) * n + u);
        }
    }
    // relabel the level-0 classes in order of first vertex
    std::map<std::size_t, std::size_t> renumber;
    for (Vertex v = 0; v < n; ++v) {
        label[v] = renumber.emplace(comp[v], renumber.size()).first->second;
    }
    return label;
}

AlterData alter_invariants(const Digraph &d, Vertex v) { return alter_invariants(d, automorphism_group(d), v); }

AlterData alter_invariants(const Digraph &d, const PermutationGroup &aut, Vertex v)
{
    if (!is_connected(d))
        throw std::invalid_argument("alter invariants need a connected digraph");
    if (v >= d.order())
        throw std::invalid_argument("vertex out of range");
    AlterData out;
    out.canonical = aut.is_transitive();
    auto cur = alter_classes(d, 0);
    for (std::size_t t = 0;; ++t) {
        auto next = alter_classes(d, t + 1);
        if (next == cur) {
            out.exponent = t;
            out.perimeter = *std::max_element(cur.begin(), cur.end()) + 1;
            break;
        }
        out.sequence.push_back(static_cast<std::size_t>(std::count(next.begin(), next.end(), next[v])));
        cur = std::move(next);
        if (t > d.order())
            throw std::logic_error("alter classes failed to stabilise");
    }
    return out;
}

bool certifies_consistency(const std::vector<Vertex> &cycle, const Permutation &shunt)
{
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (shunt[cycle[i]] != cycle[(i + 1) % cycle.size()])
            return false;
    return true;
}

namespace {

std::vector<Vertex> normalise(std::vector<Vertex> c)
{
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    return c;
}

std::vector<Vertex> reversed(const std::vector<Vertex> &c)
{
    return normalise(std::vector<Vertex>(c.rbegin(), c.rend()));
}

} // namespace

std::vector<ConsistentCycleOrbit> consistent_cycles(const Digraph &gamma, const PermutationGroup &g, std::size_t element_cap)
{
    if (!gamma.is_symmetric())
        throw std::invalid_argument("consistent cycles need a symmetric digraph");
    require_automorphisms(gamma, g);
    if (!g.is_transitive())
        throw std::invalid_argument("consistent cycles need a vertex-transitive group");
    PermutationGroup gb = g.with_base_prefix({0});
    PermutationGroup stab = gb.stabilizer(0);
    if (stab.order() > element_cap)
        throw EnumerationCapExceeded("vertex stabiliser of order " + stab.order().str() + " exceeds the cap of " +
                                     std::to_string(element_cap));
    std::vector<Permutation> stab_elems = stab.elements(element_cap);

    // every consistent cycle through 0 is the 0-orbit of a shunt sending 0 to a neighbour
    std::map<std::vector<Vertex>, Permutation> through_zero;
    for (Vertex w : gamma.out(0)) {
        const Permutation &t = gb.transversal(0, w);
        for (const auto &x : stab_elems) {
            Permutation s = x * t;
            std::vector<Vertex> cyc{0};
            for (Vertex y = s[0]; y != 0; y = s[y])
                cyc.push_back(y);
            if (cyc.size() < 3)
                continue;
            through_zero.emplace(normalise(cyc), s);
        }
    }

    // Group the cycles through 0 into G-orbits. If C^h = C' with both through 0,
    // h is a transversal element moving some vertex of C to 0 followed by an
    // element of G_0, so those two kinds of moves generate the relation.
    std::vector<std::vector<Vertex>> cycles;
    std::vector<Permutation> shunts;
    std::map<std::vector<Vertex>, std::size_t> index_of;
    for (auto &[c, sh] : through_zero) {
        index_of.emplace(c, cycles.size());
        cycles.push_back(c);
        shunts.push_back(sh);
    }
    auto find_cycle = [&](const std::vector<Vertex> &c) {
        auto it = index_of.find(c);
        if (it == index_of.end())
            throw std::logic_error("image of a consistent cycle is not consistent");
        return it->second;
    };
    std::vector<std::size_t> parent(cycles.size());
    for (std::size_t i = 0; i < parent.size(); ++i)
        parent[i] = i;
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    auto image = [](const std::vector<Vertex> &c, const Permutation &x) {
        std::vector<Vertex> img(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            img[i] = x[c[i]];
        return normalise(std::move(img));
    };
    const auto stab_gens = stab.generators();
    std::vector<Permutation> back(gamma.order());
    for (Vertex v = 0; v < gamma.order(); ++v)
        back[v] = gb.transversal(0, v).inverse();
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        for (const auto &x : stab_gens) {
            std::size_t j = find_cycle(image(cycles[i], x));
            parent[root(i)] = root(j);
        }
        for (std::size_t k = 1; k < cycles[i].size(); ++k) {
            std::size_t j = find_cycle(image(cycles[i], back[cycles[i][k]]));
            parent[root(i)] = root(j);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < cycles.size(); ++i)
        classes[root(i)].push_back(i);
    std::vector<ConsistentCycleOrbit> out;
    for (const auto &[r, members] : classes) {
        const std::size_t first = members.front();
        ConsistentCycleOrbit o;
        o.representative = cycles[first];
        o.length = cycles[first].size();
        o.symmetric = root(find_cycle(reversed(cycles[first]))) == r;
        // each cycle of the orbit meets length vertices, each vertex meets |members| of them
        o.orbit_size = members.size() * gamma.order() / o.length;
        o.shunt = shunts[first];
        if (!certifies_consistency(o.representative, o.shunt))
            throw std::logic_error("stored shunt does not rotate its cycle");
        out.push_back(std::move(o));
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        return std::tie(a.length, a.representative) < std::tie(b.length, b.representative);
    });
    return out;
}

} // namespace atd
