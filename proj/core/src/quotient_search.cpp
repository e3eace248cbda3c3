#include "atd/fp_group.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace atd {

namespace {

// Regular action of <images> on the elements it generates, keyed from the identity.
std::vector<std::uint32_t> kernel_key(const std::vector<Permutation> &images, std::size_t cap)
{
    const std::size_t deg = images[0].degree();
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
    std::vector<Permutation> elems{Permutation(deg)};
    index.emplace(elems[0], 0);
    std::vector<std::uint32_t> key;
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (const auto &g : images) {
            Permutation y = elems[k] * g;
            auto [it, fresh] = index.emplace(y, static_cast<std::uint32_t>(elems.size()));
            if (fresh) {
                if (elems.size() >= cap)
                    throw std::length_error("quotient search exceeded the element cap");
                elems.push_back(std::move(y));
            }
            key.push_back(it->second);
        }
    return key;
}

} // namespace

std::vector<GroupQuotient> quotient_search_in_group(const FpPresentation &p, const PermutationGroup &k,
                                                    std::size_t element_cap)
{
    const std::size_t gens = p.generators.size();
    if (gens == 0)
        throw std::invalid_argument("presentation has no generators");
    std::vector<Permutation> elems = k.elements(element_cap);
    std::sort(elems.begin(), elems.end());

    // First generator only up to conjugacy in k: conjugate epimorphisms share a kernel.
    std::vector<Permutation> first_choices;
    {
        std::set<Permutation> seen;
        for (const auto &x : elems) {
            if (seen.count(x))
                continue;
            first_choices.push_back(x);
            for (const auto &y : elems)
                seen.insert(conjugate(x, y));
        }
    }

    // Relators sorted by the largest generator they use, checked as soon as possible.
    std::vector<std::vector<const Word *>> ready(gens);
    for (const auto &r : p.relators) {
        std::size_t top = 0;
        for (Letter x : r)
            top = std::max(top, static_cast<std::size_t>(std::abs(x) - 1));
        ready[top].push_back(&r);
    }

    std::vector<GroupQuotient> out;
    std::set<std::vector<std::uint32_t>> kernels;
    std::vector<Permutation> images(gens, Permutation(k.degree()));
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == gens) {
            PermutationGroup img(k.degree(), images);
            if (img.order() != k.order())
                return;
            if (kernels.insert(kernel_key(images, element_cap)).second)
                out.push_back({images, k.order()});
            return;
        }
        const auto &choices = i == 0 ? first_choices : elems;
        for (const auto &x : choices) {
            images[i] = x;
            bool ok = true;
            for (const Word *r : ready[i])
                if (!evaluate(*r, images).is_identity()) {
                    ok = false;
                    break;
                }
            if (ok)
                rec(i + 1);
        }
    };
    rec(0);
    return out;
}

} // namespace atd
