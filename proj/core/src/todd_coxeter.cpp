#include "atd/fp_group.hpp"

#include <cstdlib>

namespace atd {

namespace {

class Enumerator {
public:
    Enumerator(const FpPresentation &p, std::size_t cap) : cap_(cap), cols_(2 * p.generators.size())
    {
        for (const auto &r : p.relators) {
            Word w = cyclic_reduce(r);
            if (!w.empty())
                relators_.push_back(to_cols(w));
        }
        new_row();
    }

    std::vector<int> to_cols(const Word &w) const
    {
        std::vector<int> out;
        for (Letter x : w) {
            int g = std::abs(x) - 1;
            if (g < 0 || static_cast<std::size_t>(2 * g + 1) >= cols_)
                throw std::invalid_argument("word uses an undeclared generator");
            out.push_back(x > 0 ? 2 * g : 2 * g + 1);
        }
        return out;
    }

    void run(const std::vector<Word> &subgroup)
    {
        for (const auto &w : subgroup) {
            auto cw = to_cols(free_reduce(w));
            if (!cw.empty())
                scan_and_fill(0, cw);
        }
        for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
            for (const auto &r : relators_) {
                if (!live(c))
                    break;
                scan_and_fill(c, r);
            }
            for (std::size_t x = 0; x < cols_ && live(c); ++x)
                if (T(c, x) < 0)
                    define(c, static_cast<int>(x));
        }
    }

    CosetTable result(std::size_t generators) const
    {
        std::vector<int> label(parent_.size(), -1);
        std::size_t n = 0;
        for (std::size_t c = 0; c < parent_.size(); ++c)
            if (parent_[c] == static_cast<int>(c))
                label[c] = static_cast<int>(n++);
        CosetTable out;
        out.index = n;
        for (std::size_t g = 0; g < generators; ++g) {
            std::vector<Point> img(n);
            for (std::size_t c = 0; c < parent_.size(); ++c)
                if (label[c] >= 0)
                    img[static_cast<std::size_t>(label[c])] = static_cast<Point>(label[static_cast<std::size_t>(T(static_cast<int>(c), 2 * g))]);
            out.actions.emplace_back(std::move(img));
        }
        return out;
    }

private:
    static std::size_t inv(std::size_t x) { return x ^ 1; }
    int &T(int c, std::size_t x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
    int T(int c, std::size_t x) const { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
    bool live(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

    int new_row()
    {
        if (parent_.size() >= cap_)
            throw CosetCapExceeded("coset enumeration exceeded the cap of " + std::to_string(cap_) + " cosets");
        int c = static_cast<int>(parent_.size());
        parent_.push_back(c);
        table_.resize(table_.size() + cols_, -1);
        return c;
    }

    void define(int c, int x)
    {
        int d = new_row();
        T(c, static_cast<std::size_t>(x)) = d;
        T(d, inv(static_cast<std::size_t>(x))) = c;
    }

    int rep(int c)
    {
        int r = c;
        while (parent_[static_cast<std::size_t>(r)] != r)
            r = parent_[static_cast<std::size_t>(r)];
        while (parent_[static_cast<std::size_t>(c)] != r) {
            int next = parent_[static_cast<std::size_t>(c)];
            parent_[static_cast<std::size_t>(c)] = r;
            c = next;
        }
        return r;
    }

    void merge(int a, int b, std::vector<int> &queue)
    {
        a = rep(a);
        b = rep(b);
        if (a == b)
            return;
        if (a > b)
            std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
        queue.push_back(b);
    }

    void coincidence(int a, int b)
    {
        std::vector<int> queue;
        merge(a, b, queue);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int g = queue[i];
            for (std::size_t x = 0; x < cols_; ++x) {
                int d = T(g, x);
                if (d < 0)
                    continue;
                if (T(d, inv(x)) == g)
                    T(d, inv(x)) = -1;
                int mu = rep(g), nu = rep(d);
                if (T(mu, x) >= 0)
                    merge(nu, T(mu, x), queue);
                else if (T(nu, inv(x)) >= 0)
                    merge(mu, T(nu, inv(x)), queue);
                else {
                    T(mu, x) = nu;
                    T(nu, inv(x)) = mu;
                }
            }
        }
    }

    void scan_and_fill(int a, const std::vector<int> &w)
    {
        const int len = static_cast<int>(w.size());
        int f = a, b = a, i = 0, j = len - 1;
        while (true) {
            while (i <= j && T(f, static_cast<std::size_t>(w[static_cast<std::size_t>(i)])) >= 0)
                f = T(f, static_cast<std::size_t>(w[static_cast<std::size_t>(i++)]));
            if (i > j) {
                if (f != b)
                    coincidence(f, b);
                return;
            }
            while (j >= i && T(b, inv(static_cast<std::size_t>(w[static_cast<std::size_t>(j)]))) >= 0)
                b = T(b, inv(static_cast<std::size_t>(w[static_cast<std::size_t>(j--)])));
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                auto x = static_cast<std::size_t>(w[static_cast<std::size_t>(i)]);
                T(f, x) = b;
                T(b, inv(x)) = f;
                return;
            }
            define(f, w[static_cast<std::size_t>(i)]);
        }
    }

    std::size_t cap_;
    std::size_t cols_;
    std::vector<std::vector<int>> relators_;
    std::vector<int> table_;
    std::vector<int> parent_;
};

} // namespace

CosetTable todd_coxeter(const FpPresentation &p, const std::vector<Word> &subgroup, std::size_t coset_cap)
{
    if (p.generators.empty())
        return {1, {}};
    Enumerator e(p, coset_cap);
    e.run(subgroup);
    return e.result(p.generators.size());
}

} // namespace atd
