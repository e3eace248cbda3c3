#include "atd/perm_group.hpp"

#include "stab_chain.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace atd {

namespace {

std::shared_ptr<StabChain> build_chain(std::size_t degree, const std::vector<Permutation> &gens,
                                       const PermutationGroup::Options &options)
{
    auto chain = std::make_shared<StabChain>(degree);
    for (Point b : options.base_prefix)
        chain->add_base_point(b);
    std::vector<Permutation> nontrivial;
    for (const auto &g : gens)
        if (!g.is_identity())
            nontrivial.push_back(g);
    if (nontrivial.empty())
        return chain;
    // Seed with the generators on level 0 only; deeper levels are filled by
    // sifted Schreier generators or random elements.
    for (const auto &g : nontrivial) {
        if (chain->contains(g))
            continue;
        chain->add_strong(g);
    }
    if (options.known_order) {
        auto trial = std::make_shared<StabChain>(*chain);
        if (trial->random_fill(*options.known_order, options.seed)) {
            return trial;
        }
    }
    chain->complete();
    if (options.known_order && chain->order() != *options.known_order)
        throw std::logic_error("group order differs from the stated order");
    return chain;
}

struct VecHash {
    std::size_t operator()(const std::vector<Point> &v) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (Point x : v) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators)
    : PermutationGroup(degree, std::move(generators), Options{})
{
}

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators, const Options &options)
    : degree_(degree), generators_(std::move(generators))
{
    for (const auto &g : generators_)
        if (g.degree() != degree_)
            throw std::invalid_argument("generator degree differs from group degree");
    for (Point b : options.base_prefix)
        if (b >= degree_)
            throw std::invalid_argument("base point out of range");
    chain_ = build_chain(degree_, generators_, options);
    order_ = chain_->order();
}

namespace {
const StabChain &chain_of(const std::shared_ptr<const StabChain> &c)
{
    if (!c)
        throw std::logic_error("use of a default-constructed group");
    return *c;
}
} // namespace

bool PermutationGroup::contains(const Permutation &p) const { return chain_of(chain_).contains(p); }

bool PermutationGroup::is_subgroup_of(const PermutationGroup &other) const
{
    if (other.degree() != degree_)
        return false;
    for (const auto &g : generators_)
        if (!other.contains(g))
            return false;
    return true;
}

bool PermutationGroup::same_group(const PermutationGroup &other) const
{
    return other.degree() == degree_ && order() == other.order() && is_subgroup_of(other);
}

const std::vector<Point> &PermutationGroup::base() const { return chain_of(chain_).base(); }

const std::vector<Point> &PermutationGroup::basic_orbit(std::size_t level) const
{
    return chain_of(chain_).levels().at(level).orbit;
}

const Permutation &PermutationGroup::transversal(std::size_t level, Point to) const
{
    const auto &lv = chain_of(chain_).levels().at(level);
    std::int32_t p = lv.pos.at(to);
    if (p < 0)
        throw std::out_of_range("point not in basic orbit");
    return lv.u[p];
}

bool PermutationGroup::in_basic_orbit(std::size_t level, Point p) const
{
    return chain_of(chain_).levels().at(level).pos.at(p) >= 0;
}

std::vector<Permutation> PermutationGroup::strong_generators(std::size_t level) const
{
    const StabChain &c = chain_of(chain_);
    std::vector<Permutation> out;
    if (level >= c.levels().size())
        return out;
    for (std::size_t i : c.levels()[level].gens)
        out.push_back(c.strong()[i]);
    return out;
}

std::vector<Point> PermutationGroup::orbit(Point p) const
{
    std::vector<char> seen(degree_, 0);
    std::vector<Point> out{p};
    seen[p] = 1;
    for (std::size_t k = 0; k < out.size(); ++k)
        for (const auto &g : generators_) {
            Point y = g[out[k]];
            if (!seen[y]) {
                seen[y] = 1;
                out.push_back(y);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Point>> PermutationGroup::orbits() const
{
    std::vector<char> seen(degree_, 0);
    std::vector<std::vector<Point>> out;
    for (Point p = 0; p < degree_; ++p) {
        if (seen[p])
            continue;
        auto o = orbit(p);
        for (Point x : o)
            seen[x] = 1;
        out.push_back(std::move(o));
    }
    return out;
}

bool PermutationGroup::is_transitive() const { return degree_ == 0 || orbit(0).size() == degree_; }

PermutationGroup PermutationGroup::with_base_prefix(std::vector<Point> prefix) const
{
    Options o;
    o.base_prefix = std::move(prefix);
    o.known_order = order();
    return PermutationGroup(degree_, generators_, o);
}

PermutationGroup PermutationGroup::pointwise_stabilizer(std::span<const Point> points) const
{
    PermutationGroup g = with_base_prefix(std::vector<Point>(points.begin(), points.end()));
    const StabChain &c = chain_of(g.chain_);
    std::size_t k = points.size();
    BigInt order = 1;
    for (std::size_t l = k; l < c.levels().size(); ++l)
        order *= c.levels()[l].orbit.size();
    Options o;
    o.base_prefix.assign(c.base().begin() + std::min(k, c.base().size()), c.base().end());
    o.known_order = order;
    return PermutationGroup(degree_, g.strong_generators(k), o);
}

PermutationGroup PermutationGroup::stabilizer(Point p) const
{
    Point pts[1] = {p};
    return pointwise_stabilizer(pts);
}

Permutation PermutationGroup::random_element(std::mt19937_64 &rng) const
{
    const StabChain &c = chain_of(chain_);
    Permutation r(degree_);
    for (std::size_t l = c.levels().size(); l-- > 0;) {
        const auto &lv = c.levels()[l];
        std::uniform_int_distribution<std::size_t> pick(0, lv.orbit.size() - 1);
        r = r * lv.u[pick(rng)];
    }
    return r;
}

void PermutationGroup::for_each_element(const std::function<bool(const Permutation &)> &f) const
{
    const StabChain &c = chain_of(chain_);
    const auto &levels = c.levels();
    bool stop = false;
    std::function<void(std::size_t, const Permutation &)> rec = [&](std::size_t l, const Permutation &acc) {
        if (stop)
            return;
        if (l == 0) {
            if (!f(acc))
                stop = true;
            return;
        }
        for (const auto &u : levels[l - 1].u) {
            rec(l - 1, acc * u);
            if (stop)
                return;
        }
    };
    rec(levels.size(), Permutation(degree_));
}

std::vector<Permutation> PermutationGroup::elements(std::size_t cap) const
{
    if (order() > cap)
        throw std::length_error("group order exceeds element enumeration cap");
    std::vector<Permutation> out;
    for_each_element([&](const Permutation &p) {
        out.push_back(p);
        return true;
    });
    return out;
}

// ---- group algorithms -----------------------------------------------------

PermutationGroup stabilizer_chain(std::size_t degree, const std::vector<Permutation> &generators)
{
    return PermutationGroup(degree, generators);
}

OrbitsAndStabiliser orbits_and_stabiliser(const PermutationGroup &g, Point v)
{
    return {g.orbits(), g.stabilizer(v)};
}

namespace {

/// Incrementally grown subgroup, used by closure computations.
class Builder {
public:
    explicit Builder(std::size_t degree) : chain_(degree) {}

    bool add(const Permutation &p)
    {
        if (p.is_identity() || chain_.contains(p))
            return false;
        gens_.push_back(p);
        chain_.add_strong(p);
        chain_.complete();
        return true;
    }
    bool contains(const Permutation &p) const { return chain_.contains(p); }
    const std::vector<Permutation> &gens() const { return gens_; }
    BigInt order() const { return chain_.order(); }

    PermutationGroup group() const
    {
        PermutationGroup::Options o;
        o.base_prefix = chain_.base();
        o.known_order = chain_.order();
        return PermutationGroup(chain_.degree(), gens_, o);
    }

private:
    StabChain chain_;
    std::vector<Permutation> gens_;
};

} // namespace

PermutationGroup normal_closure(const PermutationGroup &g, const std::vector<Permutation> &elements)
{
    Builder b(g.degree());
    for (const auto &e : elements)
        b.add(e);
    for (std::size_t k = 0; k < b.gens().size(); ++k) {
        for (const auto &x : g.generators()) {
            Permutation c = conjugate(b.gens()[k], x);
            b.add(c);
        }
    }
    return b.group();
}

PermutationGroup derived_subgroup(const PermutationGroup &g)
{
    std::vector<Permutation> comms;
    const auto &gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            comms.push_back(commutator(gens[i], gens[j]));
    return normal_closure(g, comms);
}

bool is_solvable(const PermutationGroup &g)
{
    PermutationGroup cur = g;
    while (!cur.is_trivial()) {
        PermutationGroup next = derived_subgroup(cur);
        if (next.order() == cur.order())
            return false;
        cur = std::move(next);
    }
    return true;
}

bool is_abelian(const PermutationGroup &g)
{
    const auto &gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (gens[i] * gens[j] != gens[j] * gens[i])
                return false;
    return true;
}

bool is_normal(const PermutationGroup &g, const PermutationGroup &h)
{
    for (const auto &x : g.generators())
        for (const auto &y : h.generators())
            if (!h.contains(conjugate(y, x)))
                return false;
    return true;
}

// ---- coset action ---------------------------------------------------------

CosetAction::CosetAction(const PermutationGroup &g, const PermutationGroup &h, std::size_t index_cap)
    : h_(h), base_(g.base())
{
    if (!h.is_subgroup_of(g))
        throw std::invalid_argument("coset action needs a subgroup");
    BigInt index = g.order() / h.order();
    if (index > index_cap)
        throw GroupCapExceeded("subgroup index " + index.str() + " exceeds cap " + std::to_string(index_cap));
    std::size_t n = static_cast<std::size_t>(index);
    std::unordered_map<std::vector<Point>, std::size_t, VecHash> lookup;
    transversal_.push_back(Permutation(g.degree()));
    tree_.emplace_back(0, 0);
    lookup.emplace(key(transversal_[0]), 0);
    std::vector<std::vector<Point>> images(g.generators().size(), std::vector<Point>(n));
    for (std::size_t i = 0; i < transversal_.size(); ++i) {
        for (std::size_t s = 0; s < g.generators().size(); ++s) {
            Permutation x = transversal_[i] * g.generators()[s];
            auto k = key(x);
            auto it = lookup.find(k);
            std::size_t target;
            if (it == lookup.end()) {
                target = transversal_.size();
                lookup.emplace(std::move(k), target);
                transversal_.push_back(std::move(x));
                tree_.emplace_back(i, s);
            } else {
                target = it->second;
            }
            images[s][i] = static_cast<Point>(target);
        }
    }
    if (transversal_.size() != n)
        throw std::logic_error("coset enumeration disagrees with the group index");
    for (auto &im : images)
        generator_images_.emplace_back(std::move(im));
    for (auto &[k, v] : lookup)
        sorted_keys_.emplace_back(k, v);
    std::sort(sorted_keys_.begin(), sorted_keys_.end());
}

std::vector<Point> CosetAction::key(const Permutation &x) const
{
    // Canonical representative of h x: at each level pick the basic-orbit
    // point with the smallest image, which fixes the element of h uniquely.
    Permutation y = x;
    const std::size_t levels = h_.chain_length();
    for (std::size_t l = 0; l < levels; ++l) {
        const auto &orb = h_.basic_orbit(l);
        Point best = orb.front();
        for (Point o : orb)
            if (y[o] < y[best])
                best = o;
        if (best != h_.base()[l])
            y = h_.transversal(l, best) * y;
    }
    std::vector<Point> k;
    k.reserve(base_.size());
    for (Point b : base_)
        k.push_back(y[b]);
    return k;
}

std::size_t CosetAction::coset_of(const Permutation &x) const
{
    auto k = key(x);
    auto it = std::lower_bound(sorted_keys_.begin(), sorted_keys_.end(), k,
                               [](const auto &a, const std::vector<Point> &b) { return a.first < b; });
    if (it == sorted_keys_.end() || it->first != k)
        throw std::invalid_argument("element is not in the acting group");
    return it->second;
}

Permutation CosetAction::action_of(const Permutation &x) const
{
    std::vector<Point> img(index());
    for (std::size_t i = 0; i < index(); ++i)
        img[i] = static_cast<Point>(coset_of(transversal_[i] * x));
    return Permutation(std::move(img));
}

CoreInfo core_info(const PermutationGroup &g, const PermutationGroup &h, std::size_t index_cap)
{
    CosetAction act(g, h, index_cap);
    const std::size_t d = g.degree();
    const std::size_t m = act.index();
    // Diagonal action on points ⊔ cosets; the kernel on cosets is the
    // pointwise stabiliser of the coset points.
    std::vector<Permutation> diag;
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
        std::vector<Point> img(d + m);
        for (std::size_t i = 0; i < d; ++i)
            img[i] = g.generators()[s][static_cast<Point>(i)];
        for (std::size_t i = 0; i < m; ++i)
            img[d + i] = static_cast<Point>(d + act.generator_images()[s][static_cast<Point>(i)]);
        diag.emplace_back(std::move(img));
    }
    std::vector<Point> coset_points(m);
    std::iota(coset_points.begin(), coset_points.end(), static_cast<Point>(d));
    PermutationGroup::Options o;
    o.known_order = g.order();
    PermutationGroup big(d + m, diag, o);
    PermutationGroup kernel = big.pointwise_stabilizer(coset_points);

    std::vector<Permutation> gens;
    for (const auto &k : kernel.generators()) {
        std::vector<Point> img(k.images().begin(), k.images().begin() + static_cast<std::ptrdiff_t>(d));
        gens.emplace_back(std::move(img));
    }
    PermutationGroup::Options ko;
    ko.known_order = kernel.order();
    CoreInfo info;
    info.core = PermutationGroup(d, std::move(gens), ko);
    info.core_order = kernel.order();
    info.core_free = info.core_order == 1;
    return info;
}

// ---- overgroups -----------------------------------------------------------

std::vector<PermutationGroup> overgroups_up_to(const PermutationGroup &a, const PermutationGroup &g,
                                               std::size_t index_cap)
{
    if (!g.is_subgroup_of(a))
        throw std::invalid_argument("overgroups need g <= a");
    CosetAction act(a, g, index_cap);
    const auto &reps = act.transversal();

    std::vector<PermutationGroup> found{g};
    for (std::size_t k = 0; k < found.size(); ++k) {
        for (std::size_t r = 1; r < reps.size(); ++r) {
            const Permutation &x = reps[r];
            if (found[k].contains(x))
                continue;
            std::vector<Permutation> gens = found[k].generators();
            gens.push_back(x);
            Builder b(a.degree());
            for (const auto &y : gens)
                b.add(y);
            BigInt ord = b.order();
            bool dup = false;
            for (const auto &y : found) {
                if (y.order() != ord)
                    continue;
                bool inside = true;
                for (const auto &z : gens)
                    if (!y.contains(z)) {
                        inside = false;
                        break;
                    }
                if (inside) {
                    dup = true;
                    break;
                }
            }
            if (!dup)
                found.push_back(b.group());
        }
    }
    std::sort(found.begin(), found.end(), [](const PermutationGroup &x, const PermutationGroup &y) {
        if (x.order() != y.order())
            return x.order() < y.order();
        return x.generators() < y.generators();
    });
    return found;
}

// ---- regular subgroups ----------------------------------------------------

namespace {

struct RegularSearch {
    const PermutationGroup &g;
    RegularFlavor flavor;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::size_t n;
    PermutationGroup stab;
    std::vector<Permutation> stab_elements;
    std::vector<Permutation> witness;

    /// Closure of gens as a semiregular group; empty if it is not.
    std::vector<Permutation> semiregular_closure(const std::vector<Permutation> &gens) const
    {
        std::vector<Permutation> elems{Permutation(n)};
        std::unordered_set<Permutation, PermutationHash> seen(elems.begin(), elems.end());
        for (std::size_t i = 0; i < elems.size(); ++i) {
            for (const auto &s : gens) {
                Permutation y = elems[i] * s;
                if (seen.count(y))
                    continue;
                if (elems.size() >= n || y.fixed_points() != 0)
                    return {};
                seen.insert(y);
                elems.push_back(std::move(y));
            }
        }
        if (n % elems.size() != 0)
            return {};
        return elems;
    }

    bool dfs(const std::vector<Permutation> &gens, const std::vector<Permutation> &elems)
    {
        if (elems.size() == n) {
            witness = gens;
            return true;
        }
        std::vector<char> covered(n, 0);
        for (const auto &e : elems)
            covered[e[0]] = 1;
        Point v = 0;
        while (covered[v])
            ++v;
        const Permutation &t = g.transversal(0, v);
        for (const auto &h : stab_elements) {
            if (++nodes > budget) {
                exhausted = true;
                return false;
            }
            Permutation x = h * t;
            if (x.fixed_points() != 0)
                continue;
            if (flavor != RegularFlavor::any) {
                bool commutes = true;
                for (const auto &y : gens)
                    if (x * y != y * x) {
                        commutes = false;
                        break;
                    }
                if (!commutes)
                    continue;
            }
            auto next_gens = gens;
            next_gens.push_back(x);
            auto closure = semiregular_closure(next_gens);
            if (closure.empty())
                continue;
            if (dfs(next_gens, closure))
                return true;
            if (exhausted)
                return false;
        }
        return false;
    }
};

} // namespace

RegularSubgroupResult regular_subgroup_search(const PermutationGroup &g, RegularFlavor flavor,
                                              std::uint64_t node_budget)
{
    RegularSubgroupResult result;
    const std::size_t n = g.degree();
    if (!g.is_transitive())
        throw std::invalid_argument("regular subgroup search needs a transitive group");
    if (n == 1) {
        result.outcome = SearchOutcome::found;
        return result;
    }
    PermutationGroup gb = g.base().empty() || g.base()[0] != 0 ? g.with_base_prefix({0}) : g;
    PermutationGroup stab = gb.stabilizer(0);
    if (stab.order() > node_budget) {
        result.outcome = SearchOutcome::unknown;
        return result;
    }
    auto stab_elements = stab.elements(static_cast<std::size_t>(node_budget));

    if (flavor == RegularFlavor::cyclic) {
        // An n-cycle mapping 0 to v conjugates under the stabiliser to one
        // mapping 0 to any point of v's suborbit, so suborbit representatives suffice.
        std::vector<char> seen(n, 0);
        seen[0] = 1;
        for (Point v = 1; v < n; ++v) {
            if (seen[v])
                continue;
            for (Point w : stab.orbit(v))
                seen[w] = 1;
            const Permutation &t = gb.transversal(0, v);
            for (const auto &h : stab_elements) {
                if (++result.nodes > node_budget) {
                    result.outcome = SearchOutcome::unknown;
                    return result;
                }
                Permutation x = h * t;
                auto cyc = x.cycles();
                if (cyc.size() == 1) {
                    result.outcome = SearchOutcome::found;
                    result.witness = {x};
                    return result;
                }
            }
        }
        result.outcome = SearchOutcome::none;
        return result;
    }

    RegularSearch search{gb, flavor, node_budget, 0, false, n, stab, stab_elements, {}};
    bool found = search.dfs({}, {Permutation(n)});
    result.nodes = search.nodes;
    if (found) {
        result.outcome = SearchOutcome::found;
        result.witness = search.witness;
    } else {
        result.outcome = search.exhausted ? SearchOutcome::unknown : SearchOutcome::none;
    }
    return result;
}

} // namespace atd
