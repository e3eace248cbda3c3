#pragma once

#include "atd/alt_invariants.hpp"
#include "atd/constructions.hpp"
#include "atd/digraph.hpp"
#include "atd/fp_group.hpp"
#include "atd/perm_group.hpp"
#include "atd/sym_classify.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace atd {

/// Largest t with m > t * 2^(t+2) (0 when there is none).
std::size_t census_t(std::size_t m);
/// 1 .. max(4, t).
std::vector<std::size_t> default_s_range(std::size_t m);

struct NamedGroup {
    std::string name;
    PermutationGroup group;
};

struct CensusConfig {
    std::size_t m = 0;
    std::vector<std::size_t> s_range; // empty: default_s_range(m)
    std::size_t index_cap = 512;      // largest quotient index any cell may ask for
    std::uint64_t node_budget = 1'000'000'000ULL;
    std::size_t jobs = 1;
    bool include_gw = true;
    bool quotients = true; // false: generalised wreath digraphs only
    std::size_t catalog_element_cap = 1'000'000;
    std::function<void(const std::string &)> progress; // optional log sink
};

struct Verification {
    bool ok = false;
    std::string reason; // empty when ok
};

Verification verify_2atd(const Digraph &d);
Verification verify_2atd(const Digraph &d, const PermutationGroup &aut);

enum class ProvenanceKind { gw, quotient, catalog };

struct Provenance {
    ProvenanceKind kind = ProvenanceKind::gw;
    std::string detail; // "gw(3,1)", "A_3^2 index 64 #5", "PGL(2,7) A_3^2 #1"
};

struct AtdRecord {
    std::string name;
    std::size_t order = 0;
    bool self_opposite = false;
    std::string opposite_name;
    bool underlying_at = false;
    std::string underlying_name;
    std::size_t s = 0;
    bool stab_abelian = false;
    BigInt t_index;
    BigInt a_index;
    bool solvable = false;
    std::size_t radius = 0;
    std::size_t attachment = 0;
    AttachmentType attachment_type = AttachmentType::other;
    std::size_t alt_cycles = 0;
    std::size_t alt_exponent = 0;
    std::size_t alt_perimeter = 0;
    std::vector<std::size_t> alt_sequence;
    bool is_gw = false;
    BigInt stab_order; // not a column; |Aut(D)_v|
};

struct ConCycle {
    std::size_t length = 0;
    bool symmetric = false;
};

struct GhatRecord {
    std::string name;
    std::optional<GwParams> gw; // set for generalised wreath graphs, which the GHAT table omits
    std::size_t order = 0;
    std::optional<std::size_t> girth;
    bool bipartite = false;
    CayleyType cayley = CayleyType::unknown;
    BigInt a_stab;
    HatStabOrders g_stabs;
    bool solvable = false;
    std::optional<std::vector<ConCycle>> consistent; // empty when the enumeration was capped
};

struct HatRecord {
    std::string name;
    std::size_t order = 0;
    std::optional<std::size_t> girth;
    bool bipartite = false;
    CayleyType cayley = CayleyType::unknown;
    BigInt g_stab;
    bool solvable = false;
    std::size_t radius = 0;
    std::size_t attachment = 0;
    AttachmentType attachment_type = AttachmentType::other;
    std::size_t alt_exponent = 0;
    std::size_t alt_perimeter = 0;
    std::vector<std::size_t> alt_sequence;
    std::optional<std::size_t> cc_min, cc_max;
};

struct AtdEntry {
    Digraph digraph;
    std::size_t serial = 0; // 1-based within the order
    Provenance provenance;
    std::vector<std::uint8_t> certificate;
    AtdRecord record;
};

enum class CellStatus { complete, capped };

struct CellReport {
    std::size_t s = 0;
    std::string presentation;
    std::size_t max_index = 0;
    std::size_t quotients = 0;
    std::size_t accepted = 0; // passed the three guards
    std::uint64_t nodes = 0;
    double seconds = 0;
    CellStatus status = CellStatus::complete;
};

class CensusBudgetExceeded : public std::runtime_error {
public:
    CensusBudgetExceeded(const std::string &cell, const std::string &what)
        : std::runtime_error("cell " + cell + ": " + what), cell_(cell)
    {
    }
    const std::string &cell() const { return cell_; }

private:
    std::string cell_;
};

struct CensusResult {
    std::vector<AtdEntry> entries; // sorted by (order, certificate)
    std::vector<GhatRecord> ghat;
    std::vector<HatRecord> hat;
    std::vector<CellReport> cells;
    std::size_t m = 0;
    bool complete = false;
    std::vector<std::string> warnings;
};

/// Candidate from a quotient: H is generated by the images of the first s
/// generators, the shunt is the image of the last. Empty when a guard fails.
std::optional<Digraph> census_candidate(const std::vector<Permutation> &images, std::size_t s);

/// Deduplicates, names and computes every record. The digraphs must be
/// 2-ATDs; provenance may be empty or parallel to the digraphs.
CensusResult assemble_census(std::vector<Digraph> digraphs, std::vector<Provenance> provenance = {},
                             std::size_t jobs = 1);

CensusResult run_census(const CensusConfig &cfg);
CensusResult catalog_census(const std::vector<NamedGroup> &catalog, const CensusConfig &cfg);

/// GHAT and HAT records for the underlying graphs of deduplicated entries.
/// Also fills underlying_name in the entries' records.
void derive_ghat_hat(std::vector<AtdEntry> &entries, std::vector<GhatRecord> &ghat, std::vector<HatRecord> &hat,
                     std::size_t jobs = 1);

/// ATD[n,k] with the given separator.
std::string census_name(const std::string &prefix, std::size_t order, std::size_t serial, char sep = ',');

/// (n, r) when d is isomorphic to W(n, r).
std::optional<GwParams> identify_gw(const Digraph &d);

} // namespace atd
