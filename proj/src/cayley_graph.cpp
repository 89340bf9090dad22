#include "cayleytones/cayley_graph.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace cayleytones {

GeneratorSet::GeneratorSet(ModRing ring, std::vector<std::int64_t> elements) : ring_(ring)
{
    for (auto e : elements) {
        const int r = ring.reduce(e);
        if (r == 0) throw Error(ErrorCode::invalid_argument, "generator set may not contain 0");
        elements_.push_back(r);
    }
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    symmetric_ = std::all_of(elements_.begin(), elements_.end(),
                             [&](int s) { return contains(ring.modulus() - s); });
}

bool GeneratorSet::contains(int residue) const
{
    return std::binary_search(elements_.begin(), elements_.end(), residue);
}

GeneratorSet symmetrize(const GeneratorSet& s)
{
    std::vector<std::int64_t> all;
    for (int e : s.elements()) {
        all.push_back(e);
        all.push_back(s.ring().modulus() - e);
    }
    return {s.ring(), std::move(all)};
}

std::vector<int> bfs_distances(ModRing ring, std::span<const int> steps, int source)
{
    const int n = ring.modulus();
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::queue<int> frontier;
    dist[static_cast<std::size_t>(ring.reduce(source))] = 0;
    frontier.push(ring.reduce(source));
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (int w : steps) {
            const int u = ring.reduce(std::int64_t{v} + w);
            if (dist[static_cast<std::size_t>(u)] < 0) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                frontier.push(u);
            }
        }
    }
    return dist;
}

bool is_generating(const GeneratorSet& s)
{
    const auto sym = symmetrize(s);
    const auto dist = bfs_distances(s.ring(), sym.elements(), 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

struct CayleyGraph::DistanceCache {
    std::once_flag once;
    std::vector<std::uint16_t> table;
};

CayleyGraph::CayleyGraph(GeneratorSet generators, Orientation orientation)
    : generators_(generators),
      steps_(orientation == Orientation::oriented ? generators : symmetrize(generators)),
      symmetric_(symmetrize(generators)),
      orientation_(orientation),
      cache_(std::make_shared<DistanceCache>())
{
    if (order() > max_graph_modulus) {
        throw Error(ErrorCode::invalid_argument, "modulus " + std::to_string(order()) +
                                                     " exceeds the supported maximum of " +
                                                     std::to_string(max_graph_modulus));
    }
    if (generators_.size() == 0) throw Error(ErrorCode::invalid_argument, "empty generator set");
}

std::vector<int> CayleyGraph::neighbors(int vertex) const
{
    std::vector<int> out;
    for (int w : steps_.elements()) out.push_back(ring().reduce(std::int64_t{vertex} + w));
    return out;
}

std::span<const std::uint16_t> CayleyGraph::distance_table() const
{
    std::call_once(cache_->once, [this] {
        const auto n = static_cast<std::size_t>(order());
        std::vector<std::uint16_t> table(n * n, unreachable_distance);
        for (std::size_t a = 0; a < n; ++a) {
            const auto row = bfs_distances(ring(), symmetric_.elements(), static_cast<int>(a));
            for (std::size_t b = 0; b < n; ++b)
                if (row[b] >= 0) table[a * n + b] = static_cast<std::uint16_t>(row[b]);
        }
        cache_->table = std::move(table);
    });
    return cache_->table;
}

int CayleyGraph::distance(int a, int b) const
{
    const auto n = static_cast<std::size_t>(order());
    const auto d = distance_table()[static_cast<std::size_t>(ring().reduce(a)) * n +
                                    static_cast<std::size_t>(ring().reduce(b))];
    if (d == unreachable_distance) {
        throw Error(ErrorCode::unreachable,
                    std::to_string(b) + " is not reachable from " + std::to_string(a));
    }
    return d;
}

int CayleyGraph::distance(const ModElement& a, const ModElement& b) const
{
    if (a.ring() != ring() || b.ring() != ring())
        throw Error(ErrorCode::modulus_mismatch, "vertex does not belong to this graph");
    return distance(a.value(), b.value());
}

int CayleyGraph::oriented_path_length(int a, int b) const
{
    const auto dist = bfs_distances(ring(), steps_.elements(), a);
    const int d = dist[static_cast<std::size_t>(ring().reduce(b))];
    if (d < 0) {
        throw Error(ErrorCode::unreachable, "no oriented path from " + std::to_string(a) +
                                                " to " + std::to_string(b));
    }
    return d;
}

Path CayleyGraph::shortest_path(int a, int b) const
{
    a = ring().reduce(a);
    b = ring().reduce(b);
    int remaining = distance(a, b);
    Path path;
    path.vertices.push_back(a);
    // Walk greedily: from v pick the smallest label whose target is one closer to b.
    int v = a;
    while (remaining > 0) {
        for (int w : symmetric_.elements()) {
            const int u = ring().reduce(std::int64_t{v} + w);
            if (distance(u, b) == remaining - 1) {
                path.steps.push_back(w);
                path.vertices.push_back(u);
                v = u;
                break;
            }
        }
        --remaining;
    }
    return path;
}

bool is_isometry_bruteforce(const CayleyGraph& g, std::span<const int> image)
{
    const auto n = static_cast<std::size_t>(g.order());
    if (image.size() != n)
        throw Error(ErrorCode::invalid_argument, "map table size does not match the graph order");
    const auto table = g.distance_table();
    for (std::size_t x = 0; x < n; ++x) {
        const auto fx = static_cast<std::size_t>(g.ring().reduce(image[x]));
        for (std::size_t y = 0; y < n; ++y) {
            const auto fy = static_cast<std::size_t>(g.ring().reduce(image[y]));
            if (table[x * n + y] != table[fx * n + fy]) return false;
        }
    }
    return true;
}

bool is_isometry_bruteforce(const CayleyGraph& g, const AffineMap& f)
{
    if (f.ring() != g.ring()) throw Error(ErrorCode::modulus_mismatch, "map and graph differ in modulus");
    const auto t = f.table();
    return is_isometry_bruteforce(g, t);
}

bool is_isometry_bruteforce(const CayleyGraph& g, const Automorphism& f)
{
    return is_isometry_bruteforce(g, AffineMap(f, 0));
}

bool is_isometry_by_generators(const Automorphism& f, const GeneratorSet& s)
{
    if (f.ring() != s.ring()) throw Error(ErrorCode::modulus_mismatch, "map and generators differ in modulus");
    if (!s.symmetric()) throw Error(ErrorCode::precondition, "generator set is not symmetric");
    if (!is_generating(s)) throw Error(ErrorCode::precondition, "generator set does not generate Z_n");
    // f is injective, so f(S) subset of S already means f(S) == S.
    return std::all_of(s.elements().begin(), s.elements().end(),
                       [&](int e) { return s.contains(f(e)); });
}

std::string export_dot(const CayleyGraph& g)
{
    const int n = g.order();
    const bool oriented = g.orientation() == Orientation::oriented;
    std::ostringstream out;
    out << (oriented ? "digraph" : "graph") << " cayley_Z" << n << " {\n";
    for (int v = 0; v < n; ++v) out << "  " << v << ";\n";
    const char* arrow = oriented ? " -> " : " -- ";
    std::set<std::pair<int, int>> seen;
    for (int v = 0; v < n; ++v) {
        for (int w : g.steps().elements()) {
            const int u = g.ring().reduce(std::int64_t{v} + w);
            if (!oriented) {
                // Each undirected edge is printed once, from its smaller endpoint.
                if (u < v || !seen.emplace(std::min(u, v), std::max(u, v)).second) continue;
            }
            out << "  " << v << arrow << u << " [label=\"+" << w << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace cayleytones
