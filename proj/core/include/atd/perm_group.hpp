#pragma once

#include "atd/permutation.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace atd {

class StabChain;

/// Permutation group given by generators, with a stabiliser chain (base,
/// basic orbits, explicit transversals) built at construction.
///
/// The chain comes from deterministic Schreier-Sims. When a known order is
/// supplied, random Schreier-Sims is tried first and accepted only if it
/// reaches exactly that order; otherwise the deterministic pass completes it.
class PermutationGroup {
public:
    struct Options {
        std::vector<Point> base_prefix;
        std::optional<BigInt> known_order;
        std::uint64_t seed = 0x5eed5eedULL;
    };

    PermutationGroup() = default;
    PermutationGroup(std::size_t degree, std::vector<Permutation> generators);
    PermutationGroup(std::size_t degree, std::vector<Permutation> generators, const Options &options);

    static PermutationGroup trivial(std::size_t degree) { return PermutationGroup(degree, {}); }

    std::size_t degree() const { return degree_; }
    const std::vector<Permutation> &generators() const { return generators_; }
    const BigInt &order() const { return order_; }
    bool is_trivial() const { return order() == 1; }

    bool contains(const Permutation &p) const;
    bool is_subgroup_of(const PermutationGroup &other) const;
    bool same_group(const PermutationGroup &other) const;

    const std::vector<Point> &base() const;
    std::size_t chain_length() const { return base().size(); }
    const std::vector<Point> &basic_orbit(std::size_t level) const;
    /// Element mapping base()[level] to `to`; `to` must lie in the basic orbit.
    const Permutation &transversal(std::size_t level, Point to) const;
    bool in_basic_orbit(std::size_t level, Point p) const;
    /// Strong generators fixing base()[0..level).
    std::vector<Permutation> strong_generators(std::size_t level = 0) const;

    std::vector<Point> orbit(Point p) const;
    std::vector<std::vector<Point>> orbits() const;
    bool is_transitive() const;

    PermutationGroup with_base_prefix(std::vector<Point> prefix) const;
    PermutationGroup pointwise_stabilizer(std::span<const Point> points) const;
    PermutationGroup stabilizer(Point p) const;

    Permutation random_element(std::mt19937_64 &rng) const;
    /// Calls f on every element; stops early when f returns false.
    void for_each_element(const std::function<bool(const Permutation &)> &f) const;
    /// All elements; throws CapExceeded-like std::length_error beyond cap.
    std::vector<Permutation> elements(std::size_t cap = 1'000'000) const;

private:
    std::size_t degree_ = 0;
    std::vector<Permutation> generators_;
    std::shared_ptr<const StabChain> chain_;
    BigInt order_ = 1;
};

// ---- group algorithms -----------------------------------------------------

PermutationGroup stabilizer_chain(std::size_t degree, const std::vector<Permutation> &generators);

struct OrbitsAndStabiliser {
    std::vector<std::vector<Point>> orbits;
    PermutationGroup stabiliser;
};
OrbitsAndStabiliser orbits_and_stabiliser(const PermutationGroup &g, Point v);

PermutationGroup normal_closure(const PermutationGroup &g, const std::vector<Permutation> &elements);
PermutationGroup derived_subgroup(const PermutationGroup &g);
bool is_solvable(const PermutationGroup &g);
bool is_abelian(const PermutationGroup &g);
/// Tests whether h (a subgroup of g) is normal in g.
bool is_normal(const PermutationGroup &g, const PermutationGroup &h);

struct CoreInfo {
    PermutationGroup core;
    BigInt core_order;
    bool core_free = false;
};
/// Core of h in g as the kernel of the action on right cosets of h.
CoreInfo core_info(const PermutationGroup &g, const PermutationGroup &h, std::size_t index_cap = 100'000);

/// Right-multiplication action of g on the right cosets h x.
class CosetAction {
public:
    CosetAction(const PermutationGroup &g, const PermutationGroup &h, std::size_t index_cap = 100'000);

    std::size_t index() const { return transversal_.size(); }
    const std::vector<Permutation> &transversal() const { return transversal_; }
    /// Images of g.generators() on the cosets.
    const std::vector<Permutation> &generator_images() const { return generator_images_; }
    /// Index of the coset containing x (x must lie in g).
    std::size_t coset_of(const Permutation &x) const;
    /// Permutation of the cosets induced by x.
    Permutation action_of(const Permutation &x) const;
    /// Spanning tree of the enumeration: coset i > 0 is coset parent(i) times
    /// generator tree_generator(i).
    std::size_t parent(std::size_t i) const { return tree_[i].first; }
    std::size_t tree_generator(std::size_t i) const { return tree_[i].second; }

private:
    std::vector<Point> key(const Permutation &x) const;

    PermutationGroup h_;
    std::vector<Point> base_;
    std::vector<Permutation> transversal_;
    std::vector<Permutation> generator_images_;
    std::vector<std::pair<std::size_t, std::size_t>> tree_;
    std::vector<std::pair<std::vector<Point>, std::size_t>> sorted_keys_;
};

class GroupCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All subgroups of a that contain g (g <= a), closing <X, x> over coset
/// representatives of g in a. Sorted by order, then generator images.
std::vector<PermutationGroup> overgroups_up_to(const PermutationGroup &a, const PermutationGroup &g,
                                               std::size_t index_cap = 1024);

enum class RegularFlavor { cyclic, abelian, any };
enum class SearchOutcome { found, none, unknown };

struct RegularSubgroupResult {
    SearchOutcome outcome = SearchOutcome::none;
    std::vector<Permutation> witness; // generators of a regular subgroup when found
    std::uint64_t nodes = 0;
};

/// Looks for a regular subgroup of the transitive group g of the given flavour.
RegularSubgroupResult regular_subgroup_search(const PermutationGroup &g, RegularFlavor flavor,
                                              std::uint64_t node_budget = 1'000'000);

} // namespace atd
