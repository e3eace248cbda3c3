#include "atd/canonical.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

namespace atd {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x)
{
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 29;
    return h;
}

/// Ordered partition of the vertex set into cells.
struct Partition {
    std::vector<Vertex> lab;         // vertices in cell order
    std::vector<std::uint32_t> pos;  // inverse of lab
    std::vector<std::uint32_t> cell; // position -> start of its cell
    std::vector<std::uint32_t> end;  // cell start -> one past its end
    std::size_t cells = 0;

    bool discrete() const { return cells == lab.size(); }
};

class Refiner {
public:
    explicit Refiner(const Digraph &d) : d_(d), n_(d.order()), cnt_(n_, 0), queued_(n_, 0), marked_(n_, 0) {}

    std::uint64_t refine(Partition &p, std::vector<std::uint32_t> splitters)
    {
        std::uint64_t h = 0x51ed270b2f1e4a6dULL;
        std::deque<std::uint32_t> queue;
        for (auto s : splitters) {
            queue.push_back(s);
            queued_[s] = 1;
        }
        std::vector<Vertex> w;
        std::vector<Vertex> touched;
        std::vector<std::uint32_t> cells;
        while (!queue.empty() && !p.discrete()) {
            std::uint32_t ws = queue.front();
            queue.pop_front();
            queued_[ws] = 0;
            w.assign(p.lab.begin() + ws, p.lab.begin() + p.end[ws]);
            for (int dir = 0; dir < 2; ++dir) {
                touched.clear();
                for (Vertex x : w) {
                    auto nbrs = dir == 0 ? d_.in(x) : d_.out(x);
                    for (Vertex u : nbrs)
                        if (cnt_[u]++ == 0)
                            touched.push_back(u);
                }
                cells.clear();
                for (Vertex u : touched) {
                    std::uint32_t s = p.cell[p.pos[u]];
                    if (!marked_[s]) {
                        marked_[s] = 1;
                        cells.push_back(s);
                    }
                }
                std::sort(cells.begin(), cells.end());
                h = mix(h, (std::uint64_t(ws) << 1) | dir);
                for (auto s : cells) {
                    marked_[s] = 0;
                    h = split(p, s, h, queue);
                }
                for (Vertex u : touched)
                    cnt_[u] = 0;
            }
        }
        for (auto s : queue)
            queued_[s] = 0;
        h = mix(h, p.cells);
        return h;
    }

    std::uint64_t individualize(Partition &p, Vertex v)
    {
        std::uint32_t s = p.cell[p.pos[v]];
        std::uint32_t e = p.end[s];
        std::uint32_t pv = p.pos[v];
        Vertex other = p.lab[s];
        std::swap(p.lab[s], p.lab[pv]);
        p.pos[v] = s;
        p.pos[other] = pv;
        p.end[s] = s + 1;
        if (s + 1 < e) {
            p.end[s + 1] = e;
            for (std::uint32_t i = s + 1; i < e; ++i)
                p.cell[i] = s + 1;
        }
        ++p.cells;
        std::uint64_t h = mix(s, e - s);
        return mix(h, refine(p, {s}));
    }

private:
    std::uint64_t split(Partition &p, std::uint32_t s, std::uint64_t h, std::deque<std::uint32_t> &queue)
    {
        std::uint32_t e = p.end[s];
        if (e - s == 1)
            return mix(h, (std::uint64_t(s) << 20) ^ cnt_[p.lab[s]]);
        std::vector<std::pair<std::uint32_t, Vertex>> items;
        items.reserve(e - s);
        for (std::uint32_t i = s; i < e; ++i)
            items.emplace_back(cnt_[p.lab[i]], p.lab[i]);
        std::sort(items.begin(), items.end());
        if (items.front().first == items.back().first)
            return mix(h, (std::uint64_t(s) << 20) ^ items.front().first);
        for (std::uint32_t i = s; i < e; ++i) {
            p.lab[i] = items[i - s].second;
            p.pos[p.lab[i]] = i;
        }
        bool was_queued = queued_[s];
        std::vector<std::uint32_t> starts;
        std::uint32_t largest = s, largest_size = 0;
        for (std::uint32_t i = s; i < e;) {
            std::uint32_t j = i;
            while (j < e && items[j - s].first == items[i - s].first)
                ++j;
            for (std::uint32_t k = i; k < j; ++k)
                p.cell[k] = i;
            p.end[i] = j;
            starts.push_back(i);
            h = mix(h, (std::uint64_t(i) << 32) ^ (std::uint64_t(j - i) << 12) ^ items[i - s].first);
            if (j - i > largest_size) {
                largest_size = j - i;
                largest = i;
            }
            i = j;
        }
        p.cells += starts.size() - 1;
        for (auto st : starts) {
            if (queued_[st])
                continue;
            if (!was_queued && st == largest)
                continue;
            queued_[st] = 1;
            queue.push_back(st);
        }
        return h;
    }

    const Digraph &d_;
    std::size_t n_;
    std::vector<std::uint32_t> cnt_;
    std::vector<char> queued_;
    std::vector<char> marked_;
};

struct UnionFind {
    std::vector<Vertex> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Vertex{0}); }
    Vertex find(Vertex x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(Vertex a, Vertex b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

using Cert = std::vector<Arc>;

class Search {
public:
    Search(const Digraph &d, const CanonOptions &opt) : d_(d), n_(d.order()), refiner_(d), budget_(opt.node_budget)
    {
        Partition p;
        p.lab.resize(n_);
        p.pos.resize(n_);
        p.cell.resize(n_);
        p.end.assign(n_, 0);
        std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t, Vertex>> keyed;
        for (Vertex v = 0; v < n_; ++v)
            keyed.emplace_back(opt.colours.empty() ? 0 : opt.colours.at(v), d.in_valence(v), d.out_valence(v), v);
        std::sort(keyed.begin(), keyed.end());
        std::vector<std::uint32_t> starts;
        std::uint64_t h = 0;
        for (std::uint32_t i = 0; i < n_;) {
            std::uint32_t j = i;
            auto same = [&](std::uint32_t a, std::uint32_t b) {
                return std::get<0>(keyed[a]) == std::get<0>(keyed[b]) && std::get<1>(keyed[a]) == std::get<1>(keyed[b]) &&
                       std::get<2>(keyed[a]) == std::get<2>(keyed[b]);
            };
            while (j < n_ && same(i, j))
                ++j;
            for (std::uint32_t k = i; k < j; ++k) {
                Vertex v = std::get<3>(keyed[k]);
                p.lab[k] = v;
                p.pos[v] = k;
                p.cell[k] = i;
            }
            p.end[i] = j;
            starts.push_back(i);
            h = mix(h, (std::uint64_t(std::get<0>(keyed[i])) << 40) ^ (std::get<1>(keyed[i]) << 20) ^ std::get<2>(keyed[i]));
            h = mix(h, j - i);
            i = j;
        }
        p.cells = starts.size();
        h = mix(h, refiner_.refine(p, starts));
        root_ = std::move(p);
        root_trace_ = h;
    }

    void run()
    {
        trace_.push_back(root_trace_);
        visit(root_, true, 0);
    }

    std::vector<Vertex> labels() const
    {
        std::vector<Vertex> lab(n_);
        for (std::uint32_t i = 0; i < n_; ++i)
            lab[best_lab_[i]] = i;
        return lab;
    }
    const std::vector<Permutation> &generators() const { return gens_; }
    std::uint64_t nodes() const { return nodes_; }

    BigInt aut_order()
    {
        BigInt order = 1;
        for (std::size_t l = 0; l < first_prefix_.size(); ++l) {
            UnionFind uf(n_);
            for (const auto &g : gens_) {
                bool fixes = true;
                for (std::size_t k = 0; k < l; ++k)
                    if (g[first_prefix_[k]] != first_prefix_[k]) {
                        fixes = false;
                        break;
                    }
                if (!fixes)
                    continue;
                for (Vertex v = 0; v < n_; ++v)
                    uf.unite(v, g[v]);
            }
            Vertex r = uf.find(first_prefix_[l]);
            std::size_t size = 0;
            for (Vertex v = 0; v < n_; ++v)
                size += uf.find(v) == r;
            order *= size;
        }
        return order;
    }

private:
    Cert certificate(const Partition &p) const
    {
        Cert c;
        c.reserve(d_.arc_count());
        for (const auto &[u, v] : d_.arcs())
            c.emplace_back(p.pos[u], p.pos[v]);
        std::sort(c.begin(), c.end());
        return c;
    }

    static std::size_t divergence(const std::vector<Vertex> &a, const std::vector<Vertex> &b)
    {
        std::size_t k = 0;
        while (k < a.size() && k < b.size() && a[k] == b[k])
            ++k;
        return k;
    }

    void add_automorphism(const std::vector<Vertex> &from, const std::vector<Vertex> &to)
    {
        std::vector<Point> img(n_);
        for (std::size_t i = 0; i < n_; ++i)
            img[from[i]] = to[i];
        Permutation g(std::move(img));
        if (!g.is_identity())
            gens_.push_back(std::move(g));
    }

    // Returns the depth of the node where the search resumes.
    std::size_t leaf(const Partition &p, bool eq_first, int best_cmp)
    {
        std::size_t depth = prefix_.size();
        Cert cert = certificate(p);
        if (!have_first_) {
            have_first_ = true;
            first_trace_ = trace_;
            first_prefix_ = prefix_;
            first_lab_ = p.lab;
            first_cert_ = cert;
            best_trace_ = trace_;
            best_prefix_ = prefix_;
            best_lab_ = p.lab;
            best_cert_ = std::move(cert);
            return depth - 1;
        }
        if (eq_first && cert == first_cert_) {
            add_automorphism(first_lab_, p.lab);
            return divergence(prefix_, first_prefix_);
        }
        if (best_cmp == 0 && cert == best_cert_) {
            add_automorphism(best_lab_, p.lab);
            return divergence(prefix_, best_prefix_);
        }
        if (best_cmp > 0 || (best_cmp == 0 && cert < best_cert_)) {
            best_trace_ = trace_;
            best_prefix_ = prefix_;
            best_lab_ = p.lab;
            best_cert_ = std::move(cert);
        }
        return depth - 1;
    }

    std::size_t visit(const Partition &p, bool eq_first, int best_cmp)
    {
        const std::size_t depth = prefix_.size();
        if (p.discrete())
            return leaf(p, eq_first, best_cmp);

        std::uint32_t target = 0, target_size = 0;
        for (std::uint32_t s = 0; s < n_; s = p.end[s]) {
            std::uint32_t size = p.end[s] - s;
            if (size > 1 && (target_size == 0 || size < target_size)) {
                target = s;
                target_size = size;
            }
        }
        std::vector<Vertex> children(p.lab.begin() + target, p.lab.begin() + target + target_size);
        std::sort(children.begin(), children.end());

        std::vector<Vertex> explored;
        UnionFind uf(0);
        std::size_t gens_seen = 0;
        for (Vertex c : children) {
            if (!explored.empty()) {
                if (gens_seen != gens_.size() || uf.parent.empty()) {
                    uf = UnionFind(n_);
                    for (const auto &g : gens_) {
                        bool fixes = true;
                        for (Vertex x : prefix_)
                            if (g[x] != x) {
                                fixes = false;
                                break;
                            }
                        if (fixes)
                            for (Vertex v = 0; v < n_; ++v)
                                uf.unite(v, g[v]);
                    }
                    gens_seen = gens_.size();
                }
                Vertex rc = uf.find(c);
                bool equivalent = false;
                for (Vertex x : explored)
                    if (uf.find(x) == rc) {
                        equivalent = true;
                        break;
                    }
                if (equivalent)
                    continue;
            }
            explored.push_back(c);
            if (++nodes_ > budget_)
                throw SearchBudgetExceeded("canonical search exceeded " + std::to_string(budget_) + " nodes");

            Partition q = p;
            std::uint64_t t = refiner_.individualize(q, c);
            std::size_t child_depth = depth + 1;
            bool child_eq_first =
                !have_first_ || (eq_first && first_trace_.size() > child_depth && first_trace_[child_depth] == t);
            int child_cmp = best_cmp;
            if (have_first_ && best_cmp == 0) {
                if (best_trace_.size() <= child_depth)
                    child_cmp = 1;
                else if (t != best_trace_[child_depth])
                    child_cmp = t > best_trace_[child_depth] ? 1 : -1;
            }
            if (have_first_ && !child_eq_first && child_cmp < 0)
                continue;

            prefix_.push_back(c);
            trace_.push_back(t);
            std::size_t resume = visit(q, child_eq_first, child_cmp);
            prefix_.pop_back();
            trace_.pop_back();
            if (resume < depth)
                return resume;
        }
        return depth == 0 ? 0 : depth - 1;
    }

    const Digraph &d_;
    std::size_t n_;
    Refiner refiner_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    Partition root_;
    std::uint64_t root_trace_ = 0;

    std::vector<Vertex> prefix_;
    std::vector<std::uint64_t> trace_;

    bool have_first_ = false;
    std::vector<std::uint64_t> first_trace_, best_trace_;
    std::vector<Vertex> first_prefix_, best_prefix_;
    std::vector<Vertex> first_lab_, best_lab_;
    Cert first_cert_, best_cert_;
    std::vector<Permutation> gens_;
};

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t x)
{
    for (int k = 0; k < 4; ++k)
        out.push_back(static_cast<std::uint8_t>(x >> (8 * k)));
}

} // namespace

std::vector<std::uint8_t> certificate_bytes(const Digraph &d, const std::vector<Vertex> &labels)
{
    std::vector<Arc> arcs;
    arcs.reserve(d.arc_count());
    for (const auto &[u, v] : d.arcs())
        arcs.emplace_back(labels.at(u), labels.at(v));
    std::sort(arcs.begin(), arcs.end());
    std::vector<std::uint8_t> out;
    out.reserve(4 + 8 * arcs.size());
    put_u32(out, static_cast<std::uint32_t>(d.order()));
    for (const auto &[u, v] : arcs) {
        put_u32(out, u);
        put_u32(out, v);
    }
    return out;
}

CanonResult canonical_search(const Digraph &d, const CanonOptions &options)
{
    if (!options.colours.empty() && options.colours.size() != d.order())
        throw std::invalid_argument("colouring has wrong length");
    Search search(d, options);
    search.run();
    CanonResult r;
    auto labels = search.labels();
    r.form.bytes = certificate_bytes(d, labels);
    r.form.relabeling = Permutation(labels);
    PermutationGroup::Options o;
    o.known_order = search.aut_order();
    r.automorphisms = PermutationGroup(d.order(), search.generators(), o);
    r.nodes = search.nodes();
    return r;
}

PermutationGroup automorphism_group(const Digraph &d) { return canonical_search(d).automorphisms; }

CanonicalForm canonical_form(const Digraph &d) { return canonical_search(d).form; }

bool are_isomorphic(const Digraph &a, const Digraph &b)
{
    if (a.order() != b.order() || a.arc_count() != b.arc_count())
        return false;
    return canonical_form(a).bytes == canonical_form(b).bytes;
}

std::optional<Permutation> find_isomorphism(const Digraph &a, const Digraph &b)
{
    if (a.order() != b.order() || a.arc_count() != b.arc_count())
        return std::nullopt;
    auto fa = canonical_form(a);
    auto fb = canonical_form(b);
    if (fa.bytes != fb.bytes)
        return std::nullopt;
    return fa.relabeling * fb.relabeling.inverse();
}

bool is_self_opposite(const Digraph &d) { return are_isomorphic(d, opposite(d)); }

} // namespace atd
