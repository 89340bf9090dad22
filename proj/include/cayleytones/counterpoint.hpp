#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cayleytones/cayley_graph.hpp"
#include "cayleytones/modular_group.hpp"

namespace cayleytones {

/// Consonant set K and dissonant set D, both ascending.
struct Dichotomy {
    int modulus = 0;
    std::vector<int> consonant;
    std::vector<int> dissonant;

    /// K and D disjoint and covering Z_n.
    bool is_partition() const;

    friend bool operator==(const Dichotomy&, const Dichotomy&) = default;
};

Dichotomy make_dichotomy(ModRing ring, std::vector<int> consonant, std::vector<int> dissonant);

/// D is taken as the complement of K.
Dichotomy dichotomy_from_consonants(ModRing ring, std::vector<int> consonant);

/// K = {0,3,4,7,8,9}, D = {1,2,5,6,10,11} in Z_12.
Dichotomy fux_dichotomy();

/// {0} together with a symmetric generating set.
class KPrime {
public:
    explicit KPrime(GeneratorSet s);

    const GeneratorSet& generators() const noexcept { return s_; }
    const std::vector<int>& elements() const noexcept { return elements_; }
    ModRing ring() const noexcept { return s_.ring(); }

private:
    GeneratorSet s_;
    std::vector<int> elements_;
};

enum class Condition { strong, weak };

std::string to_string(Condition c);

struct CounterpointWitness {
    AffineMap map;
    Condition condition;
    /// Strong: the partition (K, D). Weak: (K', T(K')).
    Dichotomy dichotomy;
    std::vector<int> fixed_points;
};

struct PartitionRecord {
    Dichotomy dichotomy;
    AffineMap map;
    /// Number of affine maps satisfying the strong condition for this partition.
    int strong_witness_count = 0;
};

struct SearchReport {
    int n = 0;
    std::vector<int> generators;
    std::size_t examined = 0;
    std::vector<CounterpointWitness> witnesses;
    std::vector<PartitionRecord> partitions;
    std::vector<std::string> notes;
};

/// T^2 = Id, T(K) = D and T is an isometry of the unoriented graph. Throws
/// precondition when the dichotomy is not a partition of Z_n.
bool satisfies_strong(const AffineMap& t, const Dichotomy& dichotomy, const CayleyGraph& graph);

/// T^2 = Id, T is an isometry and T(K') is disjoint from K'.
bool satisfies_weak(const AffineMap& t, const KPrime& kprime, const CayleyGraph& graph);

/// {a + b : a in A, b in B}, ascending.
std::vector<int> sumset(ModRing ring, const std::vector<int>& a, const std::vector<int>& b);

/// Image of a set under an affine map, ascending.
std::vector<int> image_of(const AffineMap& t, const std::vector<int>& set);

struct SearchOptions {
    /// Worker threads for scanning affine candidates; 1 runs inline.
    unsigned threads = 1;
    /// Upper bound on sets reported by the extension searches.
    std::size_t max_results = 4096;
};

/// Every affine map satisfying the strong condition for the partition,
/// ordered by (multiplier, offset).
std::vector<AffineMap> find_affine_for_partition(const Dichotomy& dichotomy, const CayleyGraph& graph,
                                                 const SearchOptions& options = {});

/// Scans all |U(n)|*n affine maps for weak witnesses against K' = {0} u S and
/// cross-checks that every map (n-1)x + w with w outside K'+K' is among them.
SearchReport enumerate_weak_witnesses(const GeneratorSet& s, const SearchOptions& options = {});

/// Strong search for a given dichotomy, reported in the same format.
SearchReport enumerate_strong_witnesses(const Dichotomy& dichotomy, const CayleyGraph& graph,
                                        const SearchOptions& options = {});

/// All partitions (K, D) with K' subset of K, |K| = n/2 and T(K) = D for some
/// weak witness T (or only the given one). Each partition records how many
/// affine maps satisfy the strong condition for it. Requires n even.
SearchReport extend_to_partitions(const KPrime& kprime, const CayleyGraph& graph,
                                  std::optional<AffineMap> only = std::nullopt,
                                  const SearchOptions& options = {});

/// All maximal K containing K' with T(K) disjoint from K. Fixed points of T
/// are never added.
SearchReport maximal_consonant_extension(const KPrime& kprime, const AffineMap& t, const CayleyGraph& graph,
                                         const SearchOptions& options = {});

/// Orders witnesses by (multiplier, offset) and partitions by (map, K).
void sort_report(SearchReport& report);

/// Picks the partition whose added consonants (K minus K') have the smallest
/// total oriented path length from 0. Throws ambiguous on ties.
Dichotomy minimal_oriented_refinement(const std::vector<PartitionRecord>& partitions, const KPrime& kprime,
                                      const CayleyGraph& oriented);

} // namespace cayleytones
