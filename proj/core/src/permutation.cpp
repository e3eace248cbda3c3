#include "atd/permutation.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace atd {

Permutation::Permutation(std::size_t degree) : images_(degree)
{
    std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images))
{
    std::vector<char> hit(images_.size(), 0);
    for (Point x : images_) {
        if (x >= images_.size() || hit[x])
            throw std::invalid_argument("image list is not a permutation");
        hit[x] = 1;
    }
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>> &cycles)
{
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<char> used(degree, 0);
    for (const auto &c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= degree || used[c[i]])
                throw std::invalid_argument("cycles are not disjoint or out of range");
            used[c[i]] = 1;
            img[c[i]] = c[(i + 1) % c.size()];
        }
    }
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const
{
    for (Point i = 0; i < images_.size(); ++i)
        if (images_[i] != i)
            return false;
    return true;
}

Permutation Permutation::inverse() const
{
    Permutation r(images_.size());
    for (Point i = 0; i < images_.size(); ++i)
        r.images_[images_[i]] = i;
    return r;
}

Permutation Permutation::operator*(const Permutation &rhs) const
{
    if (rhs.degree() != degree())
        throw std::invalid_argument("degree mismatch in permutation product");
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        r.images_[i] = rhs.images_[images_[i]];
    return r;
}

Permutation Permutation::pow(long long k) const
{
    Permutation base = k < 0 ? inverse() : *this;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Permutation result(degree());
    while (e) {
        if (e & 1)
            result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::uint64_t Permutation::order() const
{
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t result = 1;
    for (const auto &c : cycles()) {
        std::uint64_t len = c.size();
        std::uint64_t g = std::gcd(result, len);
        std::uint64_t factor = len / g;
        if (result > cap / factor)
            return cap;
        result *= factor;
    }
    return result;
}

std::vector<std::vector<Point>> Permutation::cycles() const
{
    std::vector<std::vector<Point>> out;
    std::vector<char> seen(images_.size(), 0);
    for (Point i = 0; i < images_.size(); ++i) {
        if (seen[i])
            continue;
        std::vector<Point> c;
        for (Point x = i; !seen[x]; x = images_[x]) {
            seen[x] = 1;
            c.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t Permutation::fixed_points() const
{
    std::size_t k = 0;
    for (Point i = 0; i < images_.size(); ++i)
        k += images_[i] == i;
    return k;
}

std::string Permutation::to_cycle_string() const
{
    std::string s;
    for (const auto &c : cycles()) {
        if (c.size() < 2)
            continue;
        s += '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i)
                s += ' ';
            s += std::to_string(c[i]);
        }
        s += ')';
    }
    return s.empty() ? "()" : s;
}

Permutation conjugate(const Permutation &x, const Permutation &by)
{
    return by.inverse() * x * by;
}

Permutation commutator(const Permutation &x, const Permutation &y)
{
    return x.inverse() * y.inverse() * x * y;
}

std::size_t PermutationHash::operator()(const Permutation &p) const noexcept
{
    std::uint64_t h = 1469598103934665603ULL;
    for (Point x : p.images()) {
        h ^= x;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

} // namespace atd
