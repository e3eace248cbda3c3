#pragma once

#include "atd/permutation.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace atd {

/// Mutable stabiliser chain used while building a PermutationGroup.
///
/// Level l holds the generators that fix base[0..l), the basic orbit of
/// base[l] under them, and explicit transversal elements with inverses.
class StabChain {
public:
    struct Level {
        Point base = 0;
        std::vector<std::size_t> gens; // indices into strong
        std::vector<std::int32_t> pos; // point -> orbit index, -1 outside
        std::vector<Point> orbit;
        std::vector<Permutation> u, uinv;
        std::vector<std::size_t> done; // per orbit point: gens already used for Schreier generators
    };

    explicit StabChain(std::size_t degree) : degree_(degree) {}

    std::size_t degree() const { return degree_; }
    const std::vector<Level> &levels() const { return levels_; }
    const std::vector<Point> &base() const { return base_; }
    const std::vector<Permutation> &strong() const { return strong_; }

    void add_base_point(Point b);
    /// Adds h to every level whose base prefix it fixes, extending a level
    /// with a new base point if it fixes the whole base.
    std::size_t add_strong(const Permutation &h);
    /// Returns (residue, level at which sifting stopped).
    std::pair<Permutation, std::size_t> strip(Permutation y, std::size_t from = 0) const;
    bool contains(const Permutation &p) const;

    void complete();
    /// Random Schreier-Sims until the order equals target; false if it stalls.
    bool random_fill(const BigInt &target, std::uint64_t seed);

    BigInt order() const;

private:
    void extend_orbit(Level &level, std::size_t gen_index);

    std::size_t degree_;
    std::vector<Point> base_;
    std::vector<Level> levels_;
    std::vector<Permutation> strong_;
};

} // namespace atd
