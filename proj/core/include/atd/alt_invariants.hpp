#pragma once

#include "atd/digraph.hpp"
#include "atd/perm_group.hpp"

#include <string>
#include <vector>

namespace atd {

struct Walk {
    std::vector<Vertex> vertices;
    std::vector<int> signature;    // +1 along an arc, -1 against it
    std::vector<int> partial_sums; // s_0 = 0, ..., s_n
    int tolerance_min = 0;
    int tolerance_max = 0;
};

Walk walk_signature(const Digraph &d, const std::vector<Vertex> &vertices);

enum class AttachmentType { loose, antipodal, tight, other };
std::string to_string(AttachmentType t);

struct AlternatingStructure {
    std::vector<std::vector<Vertex>> cycles; // each starts at the tail of its first arc
    std::size_t radius = 0;
    std::size_t attachment = 0;
    AttachmentType type = AttachmentType::other;
    /// Some cycle passes a vertex twice, so both cycles through it coincide.
    bool doubly_traversed = false;
    /// All cycles share one length and all intersecting pairs one meet size.
    bool uniform = true;
    std::size_t cycle_count() const { return cycles.size(); }
};

/// Needs a connected asymmetric digraph with in- and out-valence 2 everywhere.
AlternatingStructure alternating_cycles(const Digraph &d);

struct RadiusAttachment {
    std::size_t radius = 0;
    std::size_t attachment = 0;
    AttachmentType type = AttachmentType::other;
};
RadiusAttachment radius_attachment(const Digraph &d);

/// Class label of every vertex under A_t (labels in order of first vertex).
std::vector<std::size_t> alter_classes(const Digraph &d, std::size_t t);

struct AlterData {
    std::size_t exponent = 0;
    std::size_t perimeter = 0;
    std::vector<std::size_t> sequence; // |A_1(v)|, ..., |A_e(v)|
    bool canonical = true;             // false when computed on a non-vertex-transitive digraph
};

AlterData alter_invariants(const Digraph &d, Vertex v = 0);
AlterData alter_invariants(const Digraph &d, const PermutationGroup &aut, Vertex v = 0);

struct ConsistentCycleOrbit {
    std::vector<Vertex> representative; // rotated so the smallest vertex comes first
    std::size_t length = 0;
    bool symmetric = false;
    std::size_t orbit_size = 0;
    Permutation shunt; // preserves the representative and rotates it one step
};

class EnumerationCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// G-orbits of G-consistent oriented cycles, sorted by (length, representative).
std::vector<ConsistentCycleOrbit> consistent_cycles(const Digraph &gamma, const PermutationGroup &g,
                                                    std::size_t element_cap = 1'000'000);

/// True when shunt maps every vertex of the oriented cycle to the next one.
bool certifies_consistency(const std::vector<Vertex> &cycle, const Permutation &shunt);

} // namespace atd
