#include "atd/fp_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace atd {

std::vector<std::uint32_t> action_key(const std::vector<Permutation> &images)
{
    if (images.empty())
        return {1};
    const std::size_t n = images[0].degree();
    std::vector<std::int64_t> label(n, -1);
    std::vector<Point> order{0};
    label[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (const auto &g : images) {
            Point y = g[order[k]];
            if (label[y] < 0) {
                label[y] = static_cast<std::int64_t>(order.size());
                order.push_back(y);
            }
        }
    if (order.size() != n)
        throw std::invalid_argument("action is not transitive");
    std::vector<std::uint32_t> key{static_cast<std::uint32_t>(n)};
    key.reserve(1 + n * images.size());
    for (Point x : order)
        for (const auto &g : images)
            key.push_back(static_cast<std::uint32_t>(label[g[x]]));
    return key;
}

namespace {

Word substitute(const Word &w, Letter y, const Word &expr)
{
    Word out;
    Word inv = inverse(expr);
    for (Letter x : w) {
        if (x == y)
            out.insert(out.end(), expr.begin(), expr.end());
        else if (x == -y)
            out.insert(out.end(), inv.begin(), inv.end());
        else
            out.push_back(x);
    }
    return free_reduce(out);
}

// Smallest rotation of w or its inverse, so cyclic conjugates dedupe.
Word cyclic_normal(const Word &w)
{
    Word best;
    for (const Word &v : {w, inverse(w)})
        for (std::size_t k = 0; k < v.size(); ++k) {
            Word r(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
            r.insert(r.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
            if (best.empty() || r < best)
                best = std::move(r);
        }
    return best;
}

struct Reduced {
    std::vector<std::size_t> kept;                 // original indices of surviving generators
    std::vector<std::pair<std::size_t, Word>> elim; // eliminated generator and its value
    std::vector<Word> relators;                     // in original letters
};

Reduced tietze(const FpPresentation &p, const std::vector<bool> &protect)
{
    const std::size_t k = p.generators.size();
    Reduced out;
    std::vector<bool> alive(k, true);
    std::vector<Word> rels;
    for (const auto &r : p.relators) {
        Word w = cyclic_reduce(r);
        if (!w.empty())
            rels.push_back(std::move(w));
    }
    std::size_t remaining = k;
    while (remaining > 1) {
        std::size_t best_gen = k, best_rel = 0;
        for (std::size_t ri = 0; ri < rels.size(); ++ri) {
            std::map<std::size_t, int> occ;
            for (Letter x : rels[ri])
                ++occ[static_cast<std::size_t>(std::abs(x) - 1)];
            for (auto [g, c] : occ) {
                if (c != 1 || protect[g])
                    continue;
                if (best_gen == k || g > best_gen || (g == best_gen && rels[ri].size() < rels[best_rel].size())) {
                    best_gen = g;
                    best_rel = ri;
                }
            }
        }
        if (best_gen == k)
            break;
        const Word r = rels[best_rel];
        const Letter y = static_cast<Letter>(best_gen + 1);
        auto pos = static_cast<std::size_t>(std::find_if(r.begin(), r.end(), [&](Letter x) { return std::abs(x) == y; }) - r.begin());
        Word u(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
        Word v(r.begin() + static_cast<std::ptrdiff_t>(pos) + 1, r.end());
        // u y^e v = 1
        Word expr = r[pos] > 0 ? concat(inverse(u), inverse(v)) : concat(v, u);
        rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(best_rel));
        for (auto &w : rels)
            w = cyclic_reduce(substitute(w, y, expr));
        for (auto &e : out.elim)
            e.second = substitute(e.second, y, expr);
        out.elim.emplace_back(best_gen, expr);
        alive[best_gen] = false;
        --remaining;
    }
    std::set<Word> seen;
    for (auto &w : rels) {
        if (w.empty())
            continue;
        Word n = cyclic_normal(w);
        if (seen.insert(n).second)
            out.relators.push_back(n);
    }
    for (std::size_t g = 0; g < k; ++g)
        if (alive[g])
            out.kept.push_back(g);
    return out;
}

class RegularSearch {
public:
    RegularSearch(const FpPresentation &p, std::size_t max_index, const LowIndexOptions &opt)
        : p_(p), opt_(opt), n_(max_index)
    {
        std::vector<bool> protect(p.generators.size(), false);
        for (const auto &[name, bound] : opt.order_bounds)
            protect[p.generator_index(name)] = true;
        red_ = tietze(p, protect);

        // columns
        col_pos_.assign(p.generators.size(), -1);
        col_neg_.assign(p.generators.size(), -1);
        std::set<std::size_t> involutions;
        std::vector<Word> rels;
        for (const auto &w : red_.relators) {
            if (w.size() == 2 && w[0] == w[1])
                involutions.insert(static_cast<std::size_t>(std::abs(w[0]) - 1));
            else
                rels.push_back(w);
        }
        for (std::size_t g : red_.kept) {
            col_pos_[g] = static_cast<int>(inv_.size());
            if (involutions.count(g)) {
                col_neg_[g] = col_pos_[g];
                inv_.push_back(col_pos_[g]);
            } else {
                col_neg_[g] = col_pos_[g] + 1;
                inv_.push_back(col_neg_[g]);
                inv_.push_back(col_pos_[g]);
            }
        }
        cols_ = inv_.size();
        rotations_.assign(cols_, {});
        for (const auto &w : rels) {
            std::vector<int> cw;
            for (Letter x : w) {
                auto g = static_cast<std::size_t>(std::abs(x) - 1);
                cw.push_back(x > 0 ? col_pos_[g] : col_neg_[g]);
            }
            for (std::size_t k = 0; k < cw.size(); ++k) {
                std::vector<int> r(cw.begin() + static_cast<std::ptrdiff_t>(k), cw.end());
                r.insert(r.end(), cw.begin(), cw.begin() + static_cast<std::ptrdiff_t>(k));
                rotations_[static_cast<std::size_t>(r[0])].push_back(std::move(r));
            }
        }
        for (const auto &[name, bound] : opt.order_bounds)
            bounds_.emplace_back(col_pos_[p.generator_index(name)], bound);

        T_.assign(n_ * cols_, -1);
        M_.assign(n_ * n_, -1);
        Minv_.assign(n_ * n_, -1);
    }

    std::vector<QuotientRecord> run(LowIndexStats *stats)
    {
        results_.clear();
        if (cols_ == 0) {
            // every generator eliminated: only the trivial quotient
            record_leaf_trivial();
        } else {
            count_ = 1;
            bool ok = setM(0, 0, 0) && propagate();
            if (ok)
                dfs(0);
        }
        if (stats)
            stats->nodes = nodes_;
        std::sort(results_.begin(), results_.end(), [](const QuotientRecord &a, const QuotientRecord &b) {
            return std::tie(a.index, a.key) < std::tie(b.index, b.key);
        });
        return std::move(results_);
    }

private:
    enum : std::uint8_t { EvT, EvM };
    struct Event {
        std::uint8_t kind;
        int a, b;
    };

    int &T(int x, int c) { return T_[static_cast<std::size_t>(x) * cols_ + static_cast<std::size_t>(c)]; }
    int &M(int q, int x) { return M_[static_cast<std::size_t>(q) * n_ + static_cast<std::size_t>(x)]; }
    int &Minv(int q, int x) { return Minv_[static_cast<std::size_t>(q) * n_ + static_cast<std::size_t>(x)]; }

    void set_cell(std::vector<int> &arr, int which, std::size_t idx, int value)
    {
        arr[idx] = value;
        trail_.push_back((static_cast<std::uint64_t>(which) << 60) | idx);
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            std::uint64_t e = trail_.back();
            trail_.pop_back();
            std::size_t idx = e & ((std::uint64_t{1} << 60) - 1);
            switch (e >> 60) {
            case 0: T_[idx] = -1; break;
            case 1: M_[idx] = -1; break;
            default: Minv_[idx] = -1; break;
            }
        }
        queue_.clear();
    }

    bool setT(int x, int c, int y)
    {
        int cur = T(x, c);
        if (cur == y)
            return true;
        if (cur >= 0)
            return false;
        int ic = inv_[static_cast<std::size_t>(c)];
        int back = T(y, ic);
        if (back >= 0 && back != x)
            return false;
        set_cell(T_, 0, static_cast<std::size_t>(x) * cols_ + static_cast<std::size_t>(c), y);
        queue_.push_back({EvT, x, c});
        if (back < 0 && !(y == x && ic == c)) {
            set_cell(T_, 0, static_cast<std::size_t>(y) * cols_ + static_cast<std::size_t>(ic), x);
            queue_.push_back({EvT, y, ic});
        }
        return true;
    }

    bool setM(int q, int x, int a)
    {
        int cur = M(q, x);
        if (cur == a)
            return true;
        if (cur >= 0)
            return false;
        int back = Minv(q, a);
        if (back >= 0 && back != x)
            return false;
        set_cell(M_, 1, static_cast<std::size_t>(q) * n_ + static_cast<std::size_t>(x), a);
        set_cell(Minv_, 2, static_cast<std::size_t>(q) * n_ + static_cast<std::size_t>(a), x);
        queue_.push_back({EvM, q, x});
        return true;
    }

    bool scan(int x, const std::vector<int> &w)
    {
        const int len = static_cast<int>(w.size());
        int f = x, i = 0;
        while (i < len && T(f, w[static_cast<std::size_t>(i)]) >= 0)
            f = T(f, w[static_cast<std::size_t>(i++)]);
        if (i == len)
            return f == x;
        int b = x, j = len - 1;
        while (j >= i && T(b, inv_[static_cast<std::size_t>(w[static_cast<std::size_t>(j)])]) >= 0)
            b = T(b, inv_[static_cast<std::size_t>(w[static_cast<std::size_t>(j--)])]);
        if (j < i)
            return f == b;
        if (j == i)
            return setT(f, w[static_cast<std::size_t>(i)], b);
        return true;
    }

    bool on_T(int p, int c)
    {
        const int r = T(p, c);
        for (const auto &w : rotations_[static_cast<std::size_t>(c)])
            if (!scan(p, w))
                return false;
        for (int q = 1; q < count_; ++q) {
            // translate the new arc p -c-> r by q
            int a = M(q, p);
            if (a >= 0) {
                int b = T(a, c), mr = M(q, r);
                if (b >= 0) {
                    if (!setM(q, r, b))
                        return false;
                } else if (mr >= 0) {
                    if (!setT(a, c, mr))
                        return false;
                }
            }
            // and pull it back through q
            int pp = Minv(q, p);
            if (pp >= 0) {
                int rr = T(pp, c);
                if (rr >= 0) {
                    if (!setM(q, rr, r))
                        return false;
                } else {
                    int ir = Minv(q, r);
                    if (ir >= 0 && !setT(pp, c, ir))
                        return false;
                }
            }
        }
        return true;
    }

    bool on_M(int q, int x)
    {
        const int a = M(q, x);
        for (int c = 0; c < static_cast<int>(cols_); ++c) {
            int r = T(x, c), b = T(a, c);
            if (r >= 0 && b >= 0) {
                if (!setM(q, r, b))
                    return false;
            } else if (r >= 0) {
                int mr = M(q, r);
                if (mr >= 0 && !setT(a, c, mr))
                    return false;
            } else if (b >= 0) {
                int ir = Minv(q, b);
                if (ir >= 0 && !setT(x, c, ir))
                    return false;
            }
        }
        return true;
    }

    bool propagate()
    {
        for (std::size_t k = 0; k < queue_.size(); ++k) {
            Event e = queue_[k];
            bool ok = e.kind == EvT ? on_T(e.a, e.b) : on_M(e.a, e.b);
            if (!ok) {
                queue_.clear();
                return false;
            }
        }
        queue_.clear();
        return bounds_ok();
    }

    bool bounds_ok()
    {
        for (auto [c, bound] : bounds_) {
            int x = 0;
            std::size_t steps = 0;
            while (steps <= bound) {
                int y = T(x, c);
                if (y < 0)
                    break;
                x = y;
                ++steps;
                if (x == 0)
                    break;
            }
            if (steps > bound)
                return false;
        }
        return true;
    }

    void dfs(std::size_t cursor)
    {
        const std::size_t cells = static_cast<std::size_t>(count_) * cols_;
        while (cursor < cells && T_[cursor] >= 0)
            ++cursor;
        if (cursor == cells) {
            record_leaf();
            return;
        }
        if (++nodes_ > opt_.node_budget)
            throw QuotientBudgetExceeded("low-index normal quotient search" +
                                         (opt_.label.empty() ? std::string() : " for " + opt_.label) +
                                         " up to index " + std::to_string(n_) + " exceeded its budget of " +
                                         std::to_string(opt_.node_budget) + " nodes");
        const int p = static_cast<int>(cursor / cols_);
        const int c = static_cast<int>(cursor % cols_);
        const int ic = inv_[static_cast<std::size_t>(c)];
        for (int y = 0; y < count_; ++y) {
            if (T(y, ic) >= 0)
                continue;
            std::size_t mark = trail_.size();
            if (setT(p, c, y) && propagate())
                dfs(cursor + 1);
            undo(mark);
        }
        if (static_cast<std::size_t>(count_) < n_) {
            std::size_t mark = trail_.size();
            int q = count_++;
            if (setM(q, 0, q) && setM(0, q, q) && setT(p, c, q) && propagate())
                dfs(cursor + 1);
            undo(mark);
            --count_;
        }
    }

    std::vector<Permutation> images_from_table()
    {
        const std::size_t n = static_cast<std::size_t>(count_);
        std::vector<Permutation> images(p_.generators.size());
        for (std::size_t g : red_.kept) {
            std::vector<Point> img(n);
            for (std::size_t x = 0; x < n; ++x)
                img[x] = static_cast<Point>(T(static_cast<int>(x), col_pos_[g]));
            images[g] = Permutation(std::move(img));
        }
        for (const auto &[g, w] : red_.elim) {
            Permutation x(n);
            for (Letter l : w) {
                const Permutation &y = images[static_cast<std::size_t>(std::abs(l) - 1)];
                x = x * (l > 0 ? y : y.inverse());
            }
            images[g] = std::move(x);
        }
        return images;
    }

    void record_leaf()
    {
        const std::size_t n = static_cast<std::size_t>(count_);
        if (opt_.accept_index && !opt_.accept_index(n))
            return;
        std::vector<Permutation> images = images_from_table();
        for (const auto &r : p_.relators)
            if (!evaluate(r, images).is_identity())
                throw std::logic_error("low-index search produced a table violating a relator");
        results_.push_back({n, images, action_key(images)});
    }

    void record_leaf_trivial()
    {
        if (opt_.accept_index && !opt_.accept_index(1))
            return;
        std::vector<Permutation> images(p_.generators.size(), Permutation(1));
        results_.push_back({1, images, action_key(images)});
    }

    const FpPresentation &p_;
    const LowIndexOptions &opt_;
    std::size_t n_;
    Reduced red_;
    std::vector<int> col_pos_, col_neg_, inv_;
    std::size_t cols_ = 0;
    std::vector<std::vector<std::vector<int>>> rotations_;
    std::vector<std::pair<int, std::size_t>> bounds_;

    std::vector<int> T_, M_, Minv_;
    std::vector<std::uint64_t> trail_;
    std::vector<Event> queue_;
    int count_ = 0;
    std::uint64_t nodes_ = 0;
    std::vector<QuotientRecord> results_;
};

} // namespace

std::vector<QuotientRecord> low_index_normal_quotients(const FpPresentation &p, std::size_t max_index,
                                                       const LowIndexOptions &options, LowIndexStats *stats)
{
    if (max_index < 1)
        throw std::invalid_argument("max index must be positive");
    if (max_index > options.index_cap)
        throw std::invalid_argument("max index " + std::to_string(max_index) + " exceeds the cap of " +
                                    std::to_string(options.index_cap));
    if (p.generators.empty()) {
        if (options.accept_index && !options.accept_index(1))
            return {};
        return {QuotientRecord{1, {}, {1}}};
    }
    RegularSearch search(p, max_index, options);
    return search.run(stats);
}

} // namespace atd
