#pragma once

#include "atd/perm_group.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atd {

/// Letters: generator i is i+1, its inverse -(i+1).
using Letter = std::int32_t;
using Word = std::vector<Letter>;

Word free_reduce(const Word &w);
Word cyclic_reduce(const Word &w);
Word inverse(const Word &w);
Word power(const Word &w, long long k);
Word concat(const Word &a, const Word &b);
Word conjugate(const Word &u, const Word &by); // by^-1 u by
Word commutator(const Word &u, const Word &v); // u^-1 v^-1 u v

struct FpPresentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    std::size_t generator_index(std::string_view name) const;
    std::string word_to_string(const Word &w) const;
    std::string to_string() const;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string &what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parses "a,b,g | a^2, b^2, a^g b, [a,b]". Juxtaposition is product, ^k a
/// power, ^w conjugation w^-1 u w, [u,v] = u^-1 v^-1 u v, and u = v stands
/// for u v^-1. Relators are freely reduced and duplicates dropped.
FpPresentation parse_presentation(std::string_view text);
Word parse_word(const FpPresentation &p, std::string_view text);

/// Evaluates w with generator i mapped to images[i].
Permutation evaluate(const Word &w, const std::vector<Permutation> &images);

// ---- universal groups ------------------------------------------------------

/// Type (s, alpha, c) of a universal group. c[j - alpha] is the bit row
/// c_{1,j} .. c_{2alpha-2s+j+1,j} for alpha <= j <= s-1.
struct UniversalType {
    std::size_t s = 1;
    std::size_t alpha = 1;
    std::vector<std::vector<std::uint8_t>> c;
    std::string name;

    friend bool operator==(const UniversalType &a, const UniversalType &b)
    {
        return a.s == b.s && a.alpha == b.alpha && a.c == b.c;
    }
};

void validate_type(const UniversalType &t);
/// Generators x_0..x_{s-1} (named a..e when s <= 5) and g.
FpPresentation universal_group(const UniversalType &t);
UniversalType reverse_type(const UniversalType &t);

struct UniversalEntry {
    UniversalType type;
    FpPresentation presentation;
};
/// One type per {c, c'} pair for 1 <= s <= s_max <= 5, named A_s^i.
std::vector<UniversalEntry> universal_catalogue(std::size_t s_max);

// ---- coset enumeration -----------------------------------------------------

class CosetCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CosetTable {
    std::size_t index = 0;
    std::vector<Permutation> actions; // one per generator, on cosets 0..index-1
};

/// HLT coset enumeration of the subgroup generated by `subgroup`.
CosetTable todd_coxeter(const FpPresentation &p, const std::vector<Word> &subgroup, std::size_t coset_cap);

// ---- low-index normal subgroups --------------------------------------------

class QuotientBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuotientRecord {
    std::size_t index = 0;
    std::vector<Permutation> images; // regular action of the quotient, one per generator
    std::vector<std::uint32_t> key;  // canonical coset table, the sort key
};

struct LowIndexOptions {
    std::uint64_t node_budget = 1'000'000'000ULL;
    std::size_t index_cap = 512;
    /// Only report quotients whose index passes this filter (all when empty).
    std::function<bool(std::size_t)> accept_index;
    /// Upper bounds on the order of the image of a named generator.
    std::vector<std::pair<std::string, std::size_t>> order_bounds;
    /// Label used in error messages.
    std::string label;
};

struct LowIndexStats {
    std::uint64_t nodes = 0;
};

/// Every normal subgroup of index <= max_index, as the regular action of the
/// quotient, sorted by (index, key). Throws QuotientBudgetExceeded when the
/// node budget runs out and std::invalid_argument above the index cap.
std::vector<QuotientRecord> low_index_normal_quotients(const FpPresentation &p, std::size_t max_index,
                                                       const LowIndexOptions &options = {},
                                                       LowIndexStats *stats = nullptr);

/// Canonical key of a transitive action given by generator images: the
/// images relabelled in order of first appearance from point 0.
std::vector<std::uint32_t> action_key(const std::vector<Permutation> &images);

// ---- quotients inside a given group ----------------------------------------

struct GroupQuotient {
    std::vector<Permutation> images; // one per generator, generating k
    BigInt kernel_index;             // |P : kernel| = |k|
};

/// All epimorphisms p -> k, one per kernel.
std::vector<GroupQuotient> quotient_search_in_group(const FpPresentation &p, const PermutationGroup &k,
                                                    std::size_t element_cap = 1'000'000);

} // namespace atd
