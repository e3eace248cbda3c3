#include "stab_chain.hpp"

#include <random>
#include <stdexcept>

namespace atd {

void StabChain::add_base_point(Point b)
{
    Level level;
    level.base = b;
    level.pos.assign(degree_, -1);
    level.pos[b] = 0;
    level.orbit.push_back(b);
    level.u.emplace_back(degree_);
    level.uinv.emplace_back(degree_);
    level.done.push_back(0);
    base_.push_back(b);
    levels_.push_back(std::move(level));
}

void StabChain::extend_orbit(Level &level, std::size_t gen_index)
{
    const Permutation &h = strong_[gen_index];
    auto add_point = [&](Point y, std::size_t from, const Permutation &by) {
        level.pos[y] = static_cast<std::int32_t>(level.orbit.size());
        level.orbit.push_back(y);
        Permutation t = level.u[from] * by;
        level.uinv.push_back(t.inverse());
        level.u.push_back(std::move(t));
        level.done.push_back(0);
    };
    std::size_t old_size = level.orbit.size();
    for (std::size_t k = 0; k < old_size; ++k) {
        Point y = h[level.orbit[k]];
        if (level.pos[y] < 0)
            add_point(y, k, h);
    }
    for (std::size_t k = old_size; k < level.orbit.size(); ++k) {
        for (std::size_t gi : level.gens) {
            const Permutation &s = strong_[gi];
            Point y = s[level.orbit[k]];
            if (level.pos[y] < 0)
                add_point(y, k, s);
        }
    }
}

std::size_t StabChain::add_strong(const Permutation &h)
{
    std::size_t j = 0;
    while (j < base_.size() && h[base_[j]] == base_[j])
        ++j;
    if (j == base_.size()) {
        Point b = 0;
        while (h[b] == b)
            ++b;
        add_base_point(b);
    }
    std::size_t idx = strong_.size();
    strong_.push_back(h);
    for (std::size_t l = 0; l <= j; ++l) {
        levels_[l].gens.push_back(idx);
        extend_orbit(levels_[l], idx);
    }
    return j;
}

std::pair<Permutation, std::size_t> StabChain::strip(Permutation y, std::size_t from) const
{
    for (std::size_t l = from; l < levels_.size(); ++l) {
        std::int32_t p = levels_[l].pos[y[levels_[l].base]];
        if (p < 0)
            return {std::move(y), l};
        if (p > 0)
            y = y * levels_[l].uinv[p];
    }
    return {std::move(y), levels_.size()};
}

bool StabChain::contains(const Permutation &p) const
{
    if (p.degree() != degree_)
        return false;
    auto [h, j] = strip(p);
    return j == levels_.size() && h.is_identity();
}

void StabChain::complete()
{
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
        bool restarted = false;
        Level *level = &levels_[i];
        for (std::size_t p = 0; p < level->orbit.size() && !restarted; ++p) {
            for (; level->done[p] < level->gens.size(); ++level->done[p]) {
                const Permutation &s = strong_[level->gens[level->done[p]]];
                Point gamma = s[level->orbit[p]];
                Permutation sch = level->u[p] * s * level->uinv[level->pos[gamma]];
                if (sch.is_identity())
                    continue;
                auto [h, j] = strip(std::move(sch), i + 1);
                if (j == levels_.size() && h.is_identity())
                    continue;
                ++level->done[p];
                std::size_t top = add_strong(h);
                i = static_cast<std::ptrdiff_t>(top);
                restarted = true;
                break;
            }
        }
        if (!restarted)
            --i;
    }
}

bool StabChain::random_fill(const BigInt &target, std::uint64_t seed)
{
    std::vector<Permutation> pool;
    for (const auto &s : strong_)
        pool.push_back(s);
    if (pool.empty())
        return target == 1;
    while (pool.size() < 10)
        pool.push_back(pool[pool.size() % strong_.size()]);
    Permutation acc(degree_);
    std::mt19937_64 rng(seed);
    auto next = [&]() {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::size_t a = pick(rng), b = pick(rng);
        while (b == a)
            b = pick(rng);
        if (rng() & 1)
            pool[a] = pool[a] * pool[b];
        else
            pool[a] = pool[a] * pool[b].inverse();
        acc = acc * pool[a];
        return acc;
    };
    for (int k = 0; k < 50; ++k)
        next();

    int idle = 0;
    while (true) {
        BigInt current = order();
        if (current == target)
            return true;
        if (current > target)
            throw std::logic_error("random Schreier-Sims exceeded the stated group order");
        if (idle > 80)
            return false;
        auto [h, j] = strip(next());
        if (j == levels_.size() && h.is_identity()) {
            ++idle;
            continue;
        }
        idle = 0;
        add_strong(h);
    }
}

BigInt StabChain::order() const
{
    BigInt r = 1;
    for (const auto &level : levels_)
        r *= level.orbit.size();
    return r;
}

} // namespace atd
