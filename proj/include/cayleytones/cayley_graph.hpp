#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cayleytones/modular_group.hpp"

namespace cayleytones {

/// Largest modulus a CayleyGraph accepts; keeps the all-pairs table small.
inline constexpr int max_graph_modulus = 4096;

/// A set of nonzero residues, stored ascending without duplicates.
class GeneratorSet {
public:
    /// Inputs are reduced mod n and deduplicated; a zero residue is rejected.
    GeneratorSet(ModRing ring, std::vector<std::int64_t> elements);

    ModRing ring() const noexcept { return ring_; }
    const std::vector<int>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool contains(int residue) const;

    /// Closed under negation mod n.
    bool symmetric() const noexcept { return symmetric_; }

    friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

private:
    ModRing ring_;
    std::vector<int> elements_;
    bool symmetric_ = false;
};

GeneratorSet symmetrize(const GeneratorSet& s);

/// Breadth-first closure of {0} under +-s reaches all of Z_n.
bool is_generating(const GeneratorSet& s);

enum class Orientation { oriented, unoriented };

struct Path {
    std::vector<int> vertices;
    /// steps[i] = vertices[i+1] - vertices[i] mod n, always a member of the step set.
    std::vector<int> steps;

    std::size_t length() const noexcept { return steps.size(); }
};

/// Cayley graph of Z_n. Edges are g -> g+w for w in the step set; the step
/// set is the generator set itself (oriented) or its symmetrization
/// (unoriented). The unoriented metric is available from either view.
class CayleyGraph {
public:
    CayleyGraph(GeneratorSet generators, Orientation orientation);

    ModRing ring() const noexcept { return generators_.ring(); }
    int order() const noexcept { return ring().modulus(); }
    Orientation orientation() const noexcept { return orientation_; }
    const GeneratorSet& generators() const noexcept { return generators_; }
    /// Labels of outgoing edges at every vertex.
    const GeneratorSet& steps() const noexcept { return steps_; }
    /// The symmetrized generators underlying the unoriented metric.
    const GeneratorSet& symmetric_generators() const noexcept { return symmetric_; }

    std::vector<int> neighbors(int vertex) const;

    /// Unoriented graph distance. Throws unreachable when b cannot be reached.
    int distance(int a, int b) const;
    int distance(const ModElement& a, const ModElement& b) const;

    /// Shortest path following outgoing edges of this graph's own step set.
    int oriented_path_length(int a, int b) const;

    /// A shortest path in the unoriented view, smallest labels first.
    Path shortest_path(int a, int b) const;

    /// Row-major n*n table of unoriented distances, built once on first use.
    /// Unreachable pairs hold unreachable_distance.
    std::span<const std::uint16_t> distance_table() const;

    static constexpr std::uint16_t unreachable_distance = 0xFFFF;

private:
    struct DistanceCache;

    GeneratorSet generators_;
    GeneratorSet steps_;
    GeneratorSet symmetric_;
    Orientation orientation_;
    std::shared_ptr<DistanceCache> cache_;
};

/// Breadth-first distances from source following the given step labels.
/// Unreached vertices are reported as -1.
std::vector<int> bfs_distances(ModRing ring, std::span<const int> steps, int source);

/// d(x,y) == d(f(x), f(y)) for every pair, using the cached all-pairs table.
/// image[x] is f(x); its size must equal n.
bool is_isometry_bruteforce(const CayleyGraph& g, std::span<const int> image);
bool is_isometry_bruteforce(const CayleyGraph& g, const AffineMap& f);
bool is_isometry_bruteforce(const CayleyGraph& g, const Automorphism& f);

/// f(S) == S. Requires S symmetric and generating; under those hypotheses the
/// answer agrees with is_isometry_bruteforce.
bool is_isometry_by_generators(const Automorphism& f, const GeneratorSet& s);

/// Graphviz rendering; vertices 0..n-1 in order, edges labelled "+w".
std::string export_dot(const CayleyGraph& g);

} // namespace cayleytones
