#pragma once

#include "atd/digraph.hpp"
#include "atd/perm_group.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace atd {

/// Canonical certificate: vertex count, then the relabelled arc list in
/// sorted order, every number a little-endian uint32.
struct CanonicalForm {
    std::vector<std::uint8_t> bytes;
    Permutation relabeling; // input vertex -> canonical label
};

class SearchBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CanonOptions {
    std::uint64_t node_budget = 20'000'000;
    /// Optional vertex colouring; the search only maps a vertex to one of
    /// the same colour, and colours are ordered by value.
    std::vector<std::uint32_t> colours;
};

struct CanonResult {
    CanonicalForm form;
    PermutationGroup automorphisms;
    std::uint64_t nodes = 0;
};

/// Individualisation-refinement search giving the canonical form and the
/// automorphism group together.
CanonResult canonical_search(const Digraph &d, const CanonOptions &options = {});

PermutationGroup automorphism_group(const Digraph &d);
CanonicalForm canonical_form(const Digraph &d);
bool are_isomorphic(const Digraph &a, const Digraph &b);
/// An isomorphism a -> b as vertex images, if one exists.
std::optional<Permutation> find_isomorphism(const Digraph &a, const Digraph &b);
bool is_self_opposite(const Digraph &d);

/// Certificate bytes of d under the labelling v -> labels[v].
std::vector<std::uint8_t> certificate_bytes(const Digraph &d, const std::vector<Vertex> &labels);

} // namespace atd
