#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace atd {

using BigInt = boost::multiprecision::cpp_int;
using Point = std::uint32_t;

/// Permutation of {0, ..., n-1}, acting on the right: x^(gh) = (x^g)^h.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::size_t degree);
    /// Throws std::invalid_argument unless images is a bijection.
    explicit Permutation(std::vector<Point> images);

    static Permutation identity(std::size_t degree) { return Permutation(degree); }
    /// Builds from disjoint cycles, e.g. {{0,1,2},{3,4}}.
    static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>> &cycles);

    std::size_t degree() const { return images_.size(); }
    Point operator[](Point x) const { return images_[x]; }
    const std::vector<Point> &images() const { return images_; }

    bool is_identity() const;
    Permutation inverse() const;
    /// Product with this applied first.
    Permutation operator*(const Permutation &rhs) const;
    Permutation pow(long long k) const;

    /// Order as the lcm of cycle lengths, saturating at UINT64_MAX.
    std::uint64_t order() const;
    std::vector<std::vector<Point>> cycles() const;
    std::size_t fixed_points() const;

    std::string to_cycle_string() const;

    friend bool operator==(const Permutation &, const Permutation &) = default;
    friend auto operator<=>(const Permutation &a, const Permutation &b) { return a.images_ <=> b.images_; }

private:
    std::vector<Point> images_;
};

Permutation conjugate(const Permutation &x, const Permutation &by); // by^-1 x by
Permutation commutator(const Permutation &x, const Permutation &y); // x^-1 y^-1 x y

struct PermutationHash {
    std::size_t operator()(const Permutation &p) const noexcept;
};

} // namespace atd
