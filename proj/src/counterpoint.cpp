#include "cayleytones/counterpoint.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <thread>

namespace cayleytones {

namespace {

std::vector<int> sorted_unique(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::string set_text(const std::vector<int>& v)
{
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << '}';
    return out.str();
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::none_of(a.begin(), a.end(),
                        [&](int x) { return std::binary_search(b.begin(), b.end(), x); });
}

// Evaluates pred on every candidate, splitting the work across threads.
// Results come back in candidate order whatever the thread count.
std::vector<AffineMap> scan(const std::vector<AffineMap>& candidates,
                            const std::function<bool(const AffineMap&)>& pred, unsigned threads)
{
    std::vector<char> pass(candidates.size(), 0);
    const auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) pass[i] = pred(candidates[i]) ? 1 : 0;
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(candidates.size())));
    if (threads <= 1) {
        run(0, candidates.size());
    } else {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (candidates.size() + threads - 1) / threads;
        for (std::size_t begin = 0; begin < candidates.size(); begin += chunk)
            workers.emplace_back(run, begin, std::min(candidates.size(), begin + chunk));
    }
    std::vector<AffineMap> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (pass[i]) out.push_back(candidates[i]);
    return out;
}

bool is_isometry(const AffineMap& t, const CayleyGraph& graph)
{
    return is_isometry_by_generators(t.linear_part(), graph.symmetric_generators());
}

void require_graph_ring(ModRing ring, const CayleyGraph& graph)
{
    if (graph.ring() != ring) throw Error(ErrorCode::modulus_mismatch, "graph and sets differ in modulus");
}

// Splits the free residues (outside K' and T(K')) into consonant/dissonant
// pairs {z, T(z)}, enumerating every choice in ascending residue order.
// Fixed points are left unassigned when skip_fixed is set, otherwise they
// make the branch fail.
class PairingSearch {
public:
    PairingSearch(const AffineMap& t, const std::vector<int>& kprime, bool skip_fixed, std::size_t limit)
        : t_(t), n_(t.ring().modulus()), skip_fixed_(skip_fixed), limit_(limit),
          state_(static_cast<std::size_t>(n_), free_slot)
    {
        for (int k : kprime) {
            state_[static_cast<std::size_t>(k)] = in_k;
            state_[static_cast<std::size_t>(t(k))] = in_d;
        }
    }

    std::vector<std::vector<int>> run()
    {
        recurse(0);
        return results_;
    }

    bool truncated() const noexcept { return truncated_; }

private:
    static constexpr char free_slot = 0, in_k = 1, in_d = 2;

    void recurse(int r)
    {
        if (results_.size() >= limit_) {
            truncated_ = true;
            return;
        }
        while (r < n_ && state_[static_cast<std::size_t>(r)] != free_slot) ++r;
        if (r == n_) {
            std::vector<int> k;
            for (int x = 0; x < n_; ++x)
                if (state_[static_cast<std::size_t>(x)] == in_k) k.push_back(x);
            results_.push_back(std::move(k));
            return;
        }
        const int image = t_(r);
        const auto ri = static_cast<std::size_t>(r);
        const auto ii = static_cast<std::size_t>(image);
        if (image == r) {
            if (!skip_fixed_) return;
            state_[ri] = in_d + 1;
            recurse(r + 1);
            state_[ri] = free_slot;
            return;
        }
        // T is an involution, so the partner of r is free exactly when r is.
        for (char side : {in_k, in_d}) {
            state_[ri] = side;
            state_[ii] = side == in_k ? in_d : in_k;
            recurse(r + 1);
            state_[ri] = free_slot;
            state_[ii] = free_slot;
        }
    }

    AffineMap t_;
    int n_;
    bool skip_fixed_;
    std::size_t limit_;
    std::vector<char> state_;
    std::vector<std::vector<int>> results_;
    bool truncated_ = false;
};

} // namespace

bool Dichotomy::is_partition() const
{
    if (!disjoint(consonant, dissonant)) return false;
    return static_cast<int>(consonant.size() + dissonant.size()) == modulus;
}

Dichotomy make_dichotomy(ModRing ring, std::vector<int> consonant, std::vector<int> dissonant)
{
    Dichotomy d;
    d.modulus = ring.modulus();
    for (auto& x : consonant) x = ring.reduce(x);
    for (auto& x : dissonant) x = ring.reduce(x);
    d.consonant = sorted_unique(std::move(consonant));
    d.dissonant = sorted_unique(std::move(dissonant));
    if (!disjoint(d.consonant, d.dissonant))
        throw Error(ErrorCode::invalid_argument, "consonant and dissonant sets overlap");
    return d;
}

Dichotomy dichotomy_from_consonants(ModRing ring, std::vector<int> consonant)
{
    for (auto& x : consonant) x = ring.reduce(x);
    consonant = sorted_unique(std::move(consonant));
    std::vector<int> rest;
    for (int x = 0; x < ring.modulus(); ++x)
        if (!std::binary_search(consonant.begin(), consonant.end(), x)) rest.push_back(x);
    return make_dichotomy(ring, std::move(consonant), std::move(rest));
}

Dichotomy fux_dichotomy()
{
    return make_dichotomy(ModRing(12), {0, 3, 4, 7, 8, 9}, {1, 2, 5, 6, 10, 11});
}

KPrime::KPrime(GeneratorSet s) : s_(std::move(s))
{
    if (!s_.symmetric()) throw Error(ErrorCode::precondition, "K' needs a symmetric generating set");
    if (!is_generating(s_)) throw Error(ErrorCode::precondition, "K' needs a generating set");
    elements_.push_back(0);
    elements_.insert(elements_.end(), s_.elements().begin(), s_.elements().end());
}

std::string to_string(Condition c)
{
    return c == Condition::strong ? "strong" : "weak";
}

std::vector<int> sumset(ModRing ring, const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> out;
    for (int x : a)
        for (int y : b) out.push_back(ring.reduce(std::int64_t{x} + y));
    return sorted_unique(std::move(out));
}

std::vector<int> image_of(const AffineMap& t, const std::vector<int>& set)
{
    std::vector<int> out;
    for (int x : set) out.push_back(t(x));
    return sorted_unique(std::move(out));
}

bool satisfies_strong(const AffineMap& t, const Dichotomy& dichotomy, const CayleyGraph& graph)
{
    if (!dichotomy.is_partition())
        throw Error(ErrorCode::precondition, "dichotomy is not a partition of Z_n");
    if (t.ring().modulus() != dichotomy.modulus)
        throw Error(ErrorCode::modulus_mismatch, "map and dichotomy differ in modulus");
    require_graph_ring(t.ring(), graph);
    return is_involution(t) && image_of(t, dichotomy.consonant) == dichotomy.dissonant && is_isometry(t, graph);
}

bool satisfies_weak(const AffineMap& t, const KPrime& kprime, const CayleyGraph& graph)
{
    if (t.ring() != kprime.ring()) throw Error(ErrorCode::modulus_mismatch, "map and K' differ in modulus");
    require_graph_ring(t.ring(), graph);
    return is_involution(t) && is_isometry(t, graph) && disjoint(image_of(t, kprime.elements()), kprime.elements());
}

std::vector<AffineMap> find_affine_for_partition(const Dichotomy& dichotomy, const CayleyGraph& graph,
                                                 const SearchOptions& options)
{
    if (!dichotomy.is_partition())
        throw Error(ErrorCode::precondition, "dichotomy is not a partition of Z_n");
    const auto candidates = affine_maps(graph.ring());
    return scan(candidates, [&](const AffineMap& t) { return satisfies_strong(t, dichotomy, graph); },
                options.threads);
}

SearchReport enumerate_strong_witnesses(const Dichotomy& dichotomy, const CayleyGraph& graph,
                                        const SearchOptions& options)
{
    SearchReport report;
    report.n = graph.order();
    report.generators = graph.symmetric_generators().elements();
    report.examined = affine_maps(graph.ring()).size();
    for (const auto& t : find_affine_for_partition(dichotomy, graph, options))
        report.witnesses.push_back({t, Condition::strong, dichotomy, fixed_points(t)});
    report.notes.push_back("K = " + set_text(dichotomy.consonant) + ", D = " + set_text(dichotomy.dissonant));
    if (report.witnesses.size() == 1)
        report.notes.push_back("unique strong witness " + report.witnesses.front().map.to_string());
    else
        report.notes.push_back(std::to_string(report.witnesses.size()) + " strong witnesses");
    return report;
}

SearchReport enumerate_weak_witnesses(const GeneratorSet& s, const SearchOptions& options)
{
    const KPrime kprime(s);
    const CayleyGraph graph(s, Orientation::unoriented);
    const auto ring = s.ring();
    const int n = ring.modulus();

    SearchReport report;
    report.n = n;
    report.generators = s.elements();
    const auto candidates = affine_maps(ring);
    report.examined = candidates.size();

    const auto found = scan(candidates, [&](const AffineMap& t) { return satisfies_weak(t, kprime, graph); },
                            options.threads);
    for (const auto& t : found) {
        Dichotomy d;
        d.modulus = n;
        d.consonant = kprime.elements();
        d.dissonant = image_of(t, kprime.elements());
        auto fixed = fixed_points(t);
        if (!fixed.empty())
            report.notes.push_back("witness " + t.to_string() + " has fixed points " + set_text(fixed));
        report.witnesses.push_back({t, Condition::weak, std::move(d), std::move(fixed)});
    }

    std::vector<int> reflections;
    for (const auto& f : automorphisms(ring)) {
        if (is_involution(AffineMap(f, 0)) && is_isometry_by_generators(f, s)) reflections.push_back(f.multiplier());
    }
    report.notes.push_back("involutive isometric multipliers " + set_text(reflections));

    // Negation plus any offset outside K'+K' must be a witness.
    const auto sums = sumset(ring, kprime.elements(), kprime.elements());
    report.notes.push_back("K'+K' = " + set_text(sums));
    std::vector<int> offsets;
    std::vector<int> missing;
    for (int w = 0; w < n; ++w) {
        if (std::binary_search(sums.begin(), sums.end(), w)) continue;
        offsets.push_back(w);
        const AffineMap expected(ring, n - 1, w);
        if (std::find(found.begin(), found.end(), expected) == found.end()) missing.push_back(w);
    }
    if (missing.empty()) {
        report.notes.push_back("negation criterion: offsets " + set_text(offsets) + " all confirmed");
    } else {
        report.notes.push_back("negation criterion VIOLATED for offsets " + set_text(missing));
    }
    return report;
}

SearchReport extend_to_partitions(const KPrime& kprime, const CayleyGraph& graph, std::optional<AffineMap> only,
                                  const SearchOptions& options)
{
    const auto ring = kprime.ring();
    const int n = ring.modulus();
    require_graph_ring(ring, graph);
    if (n % 2 != 0) {
        throw Error(ErrorCode::no_strong_dichotomy,
                    "n = " + std::to_string(n) + " is odd, so no partition with |K| = |T(K)| exists");
    }
    if (static_cast<int>(kprime.elements().size()) > n / 2)
        throw Error(ErrorCode::precondition, "K' has more than n/2 elements");

    SearchReport report;
    report.n = n;
    report.generators = kprime.generators().elements();

    std::vector<AffineMap> maps;
    if (only) {
        report.examined = 1;
        if (satisfies_weak(*only, kprime, graph)) maps.push_back(*only);
        else report.notes.push_back(only->to_string() + " does not satisfy the weak condition");
    } else {
        const auto candidates = affine_maps(ring);
        report.examined = candidates.size();
        maps = scan(candidates, [&](const AffineMap& t) { return satisfies_weak(t, kprime, graph); },
                    options.threads);
    }

    for (const auto& t : maps) {
        auto fixed = fixed_points(t);
        Dichotomy weak_pair;
        weak_pair.modulus = n;
        weak_pair.consonant = kprime.elements();
        weak_pair.dissonant = image_of(t, kprime.elements());
        report.witnesses.push_back({t, Condition::weak, weak_pair, fixed});
        if (!fixed.empty()) {
            report.notes.push_back(t.to_string() + " skipped: fixed points " + set_text(fixed));
            continue;
        }
        PairingSearch search(t, kprime.elements(), false, options.max_results);
        for (auto& k : search.run()) {
            const bool seen = std::any_of(report.partitions.begin(), report.partitions.end(),
                                          [&](const PartitionRecord& r) { return r.dichotomy.consonant == k; });
            if (seen) continue;
            auto d = make_dichotomy(ring, k, image_of(t, k));
            const auto count = find_affine_for_partition(d, graph, options).size();
            report.partitions.push_back({std::move(d), t, static_cast<int>(count)});
        }
        if (search.truncated()) report.notes.push_back("partition list for " + t.to_string() + " truncated");
    }
    return report;
}

SearchReport maximal_consonant_extension(const KPrime& kprime, const AffineMap& t, const CayleyGraph& graph,
                                         const SearchOptions& options)
{
    const auto ring = kprime.ring();
    require_graph_ring(ring, graph);
    if (!satisfies_weak(t, kprime, graph))
        throw Error(ErrorCode::precondition, t.to_string() + " does not satisfy the weak condition");

    SearchReport report;
    report.n = ring.modulus();
    report.generators = kprime.generators().elements();
    report.examined = 1;
    const auto fixed = fixed_points(t);
    Dichotomy weak_pair;
    weak_pair.modulus = report.n;
    weak_pair.consonant = kprime.elements();
    weak_pair.dissonant = image_of(t, kprime.elements());
    report.witnesses.push_back({t, Condition::weak, weak_pair, fixed});
    if (!fixed.empty()) report.notes.push_back("excluded fixed points " + set_text(fixed));

    PairingSearch search(t, kprime.elements(), true, options.max_results);
    for (auto& k : search.run()) {
        auto d = make_dichotomy(ring, k, image_of(t, k));
        int count = 0;
        if (d.is_partition()) count = static_cast<int>(find_affine_for_partition(d, graph, options).size());
        report.partitions.push_back({std::move(d), t, count});
    }
    if (search.truncated()) report.notes.push_back("maximal set list truncated");
    return report;
}

void sort_report(SearchReport& report)
{
    std::stable_sort(report.witnesses.begin(), report.witnesses.end(),
                     [](const auto& a, const auto& b) { return a.map < b.map; });
    std::stable_sort(report.partitions.begin(), report.partitions.end(), [](const auto& a, const auto& b) {
        if (a.map != b.map) return a.map < b.map;
        return a.dichotomy.consonant < b.dichotomy.consonant;
    });
}

Dichotomy minimal_oriented_refinement(const std::vector<PartitionRecord>& partitions, const KPrime& kprime,
                                      const CayleyGraph& oriented)
{
    if (partitions.empty()) throw Error(ErrorCode::precondition, "no partitions to refine");
    const auto& base = kprime.elements();
    std::vector<int> costs;
    for (const auto& record : partitions) {
        int cost = 0;
        for (int z : record.dichotomy.consonant)
            if (!std::binary_search(base.begin(), base.end(), z)) cost += oriented.oriented_path_length(0, z);
        costs.push_back(cost);
    }
    const int best = *std::min_element(costs.begin(), costs.end());
    std::vector<std::size_t> winners;
    for (std::size_t i = 0; i < costs.size(); ++i)
        if (costs[i] == best) winners.push_back(i);
    if (winners.size() > 1) {
        std::string msg = "oriented path length " + std::to_string(best) + " is shared by";
        for (auto i : winners) msg += " K=" + set_text(partitions[i].dichotomy.consonant);
        throw Error(ErrorCode::ambiguous, msg);
    }
    return partitions[winners.front()].dichotomy;
}

} // namespace cayleytones
